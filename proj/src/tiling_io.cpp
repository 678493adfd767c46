#include <algorithm>
#include <cstdio>
#include <limits>
#include "json.hpp"
#include <sstream>

#include "quasilattice/pentagrid.hpp"

namespace ql {

std::string patch_to_json(const TilingPatch& patch) {
  nlohmann::ordered_json j;
  j["n"] = patch.grid.order();
  j["gamma"] = patch.grid.offsets;
  j["radius"] = patch.radius;
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const auto& v : patch.vertices) {
    verts.push_back({{"k", v.kvec.k}, {"index", v.kvec.index()}, {"pos", {v.position.real(), v.position.imag()}}});
  }
  auto& rh = j["rhombi"] = nlohmann::json::array();
  for (const auto& r : patch.rhombi) {
    std::string shape = to_string(r.shape);
    if (r.shape == Shape::other) shape = "angle" + std::to_string(r.angle_units);
    rh.push_back({{"grids", {r.r, r.s}},
                  {"lines", {r.k_r, r.k_s}},
                  {"shape", shape},
                  {"corners", r.corners}});
  }
  return j.dump();
}

std::string patch_to_svg(const TilingPatch& patch, bool ammann) {
  double lo_x = std::numeric_limits<double>::max(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& v : patch.vertices) {
    lo_x = std::min(lo_x, v.position.real());
    hi_x = std::max(hi_x, v.position.real());
    lo_y = std::min(lo_y, v.position.imag());
    hi_y = std::max(hi_y, v.position.imag());
  }
  if (patch.vertices.empty()) lo_x = hi_x = lo_y = hi_y = 0.0;
  const double scale = 20.0;
  const double pad = 1.0;
  auto px = [&](cplx z) { return (z.real() - lo_x + pad) * scale; };
  auto py = [&](cplx z) { return (hi_y - z.imag() + pad) * scale; };  // y up

  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (hi_x - lo_x + 2 * pad) * scale
      << "\" height=\"" << (hi_y - lo_y + 2 * pad) * scale << "\">\n";
  out << "<g stroke=\"#333\" stroke-width=\"0.6\">\n";
  for (const auto& r : patch.rhombi) {
    const char* fill = r.shape == Shape::fat ? "#e8c36a" : r.shape == Shape::skinny ? "#5b8fb9" : "#b5c99a";
    // corner order (0,0) (1,0) (1,1) (0,1) walks the boundary
    out << "<polygon fill=\"" << fill << "\" points=\"";
    for (int c : {0, 1, 3, 2}) {
      const cplx z = patch.vertices[r.corners[c]].position;
      out << px(z) << ',' << py(z) << ' ';
    }
    out << "\"/>\n";
  }
  out << "</g>\n";
  if (ammann) {
    out << "<g stroke=\"#c0392b\" stroke-width=\"0.8\">\n";
    for (const auto& r : patch.rhombi) {
      for (const auto& seg : ammann_decorate(r, patch)) {
        out << "<line x1=\"" << px(seg.a) << "\" y1=\"" << py(seg.a) << "\" x2=\"" << px(seg.b)
            << "\" y2=\"" << py(seg.b) << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ql
