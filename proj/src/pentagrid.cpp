#include "quasilattice/pentagrid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "quasilattice/errors.hpp"

namespace ql {

namespace {

constexpr double kPi = std::numbers::pi;

double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

}  // namespace

cplx grid_root(int n, int j) {
  const double base = (n % 2 == 1) ? 2.0 * kPi / n : kPi / n;
  return std::polar(1.0, base * j);
}

Pentagrid Pentagrid::penrose() { return penrose({0.17, 0.23, -0.37, 0.11, -0.14}); }

Pentagrid Pentagrid::penrose(const std::array<double, 5>& gamma) {
  return multigrid({gamma.begin(), gamma.end()});
}

Pentagrid Pentagrid::multigrid(std::vector<double> offsets) {
  if (offsets.size() < 4) throw InvalidArgument("a multigrid needs at least 4 families");
  Pentagrid g;
  g.offsets = std::move(offsets);
  return g;
}

cplx Pentagrid::direction(int j) const { return grid_root(order(), j); }

double Pentagrid::grid_value(int j, cplx z) const {
  return (z * std::conj(direction(j))).real() + offsets[j];
}

int IntegerVector::index() const { return std::accumulate(k.begin(), k.end(), 0); }

bool IntegerVector::even() const { return index() % 2 == 0; }

std::size_t IntegerVectorHash::operator()(const IntegerVector& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : v.k) h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ull;
  return h;
}

IntegerVector mesh_vector(const Pentagrid& grid, cplx z) {
  IntegerVector v;
  v.k.resize(grid.order());
  for (int j = 0; j < grid.order(); ++j) {
    const double x = grid.grid_value(j, z);
    if (distance_to_integer(x) < grid.tolerance) {
      throw OnGridLine("point lies on a line of family " + std::to_string(j));
    }
    v.k[j] = static_cast<int>(std::ceil(x));
  }
  return v;
}

cplx vertex_position(const IntegerVector& kvec) {
  const int n = static_cast<int>(kvec.k.size());
  cplx z = 0.0;
  for (int j = 0; j < n; ++j) z += static_cast<double>(kvec.k[j]) * grid_root(n, j);
  return z;
}

const char* to_string(Shape s) {
  switch (s) {
    case Shape::fat: return "fat";
    case Shape::skinny: return "skinny";
    default: return "other";
  }
}

DualRhombus dualize_intersection(const Pentagrid& grid, int r, int k_r, int s, int k_s) {
  const int n = grid.order();
  if (r == s || r < 0 || s < 0 || r >= n || s >= n) {
    throw InvalidArgument("grid indices must be distinct and below " + std::to_string(n));
  }
  // Re(z ζ^{-j}) = x cosθ_j + y sinθ_j, solved for the two lines.
  const cplx er = grid.direction(r);
  const cplx es = grid.direction(s);
  const double p = k_r - grid.offsets[r];
  const double q = k_s - grid.offsets[s];
  const double det = er.real() * es.imag() - er.imag() * es.real();
  const cplx z0{(p * es.imag() - q * er.imag()) / det, (er.real() * q - es.real() * p) / det};

  IntegerVector base;
  base.k.resize(n);
  for (int j = 0; j < n; ++j) {
    if (j == r) {
      base.k[j] = k_r;
    } else if (j == s) {
      base.k[j] = k_s;
    } else {
      const double x = grid.grid_value(j, z0);
      if (distance_to_integer(x) < grid.tolerance) {
        throw IrregularIntersection("line " + std::to_string(static_cast<long>(std::round(x))) +
                                    " of family " + std::to_string(j) + " passes through the crossing of (" +
                                    std::to_string(r) + "," + std::to_string(k_r) + ") and (" +
                                    std::to_string(s) + "," + std::to_string(k_s) + ")");
      }
      base.k[j] = static_cast<int>(std::ceil(x));
    }
  }

  DualRhombus d;
  d.rhombus.r = r;
  d.rhombus.s = s;
  d.rhombus.k_r = k_r;
  d.rhombus.k_s = k_s;
  d.rhombus.intersection = z0;
  const double angle = std::abs(std::arg(es / er));
  const double smallest = std::min(angle, kPi - angle);
  d.rhombus.angle_units = static_cast<int>(std::lround(smallest / (kPi / n)));
  if (n == 5) d.rhombus.shape = d.rhombus.angle_units == 2 ? Shape::fat : Shape::skinny;
  for (int c = 0; c < 4; ++c) {
    d.kvecs[c] = base;
    d.kvecs[c].k[r] += c & 1;
    d.kvecs[c].k[s] += (c >> 1) & 1;
    d.positions[c] = vertex_position(d.kvecs[c]);
  }
  return d;
}

std::size_t TilingPatch::count(Shape s) const {
  return static_cast<std::size_t>(
      std::count_if(rhombi.begin(), rhombi.end(), [&](const Rhombus& r) { return r.shape == s; }));
}

double TilingPatch::complete_radius() const {
  const int n = grid.order();
  double offset = n;
  for (double g : grid.offsets) offset += std::abs(g);
  constexpr double kMeshDiameter = 2.5;
  return std::max(0.0, 0.5 * n * (radius - kMeshDiameter) - offset);
}

std::vector<std::array<int, 2>> TilingPatch::edges() const {
  std::set<std::array<int, 2>> out;
  auto add = [&](int a, int b) { out.insert({std::min(a, b), std::max(a, b)}); };
  for (const auto& rh : rhombi) {
    add(rh.corners[0], rh.corners[1]);
    add(rh.corners[0], rh.corners[2]);
    add(rh.corners[1], rh.corners[3]);
    add(rh.corners[2], rh.corners[3]);
  }
  return {out.begin(), out.end()};
}

TilingPatch generate_patch(const Pentagrid& grid, double radius) {
  const int n = grid.order();
  TilingPatch patch;
  patch.grid = grid;
  patch.radius = radius;
  if (radius <= 0.0) return patch;

  struct Job {
    int r, s, k_r;
  };
  std::vector<Job> jobs;
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      const int lo = static_cast<int>(std::ceil(-radius + grid.offsets[r]));
      const int hi = static_cast<int>(std::floor(radius + grid.offsets[r]));
      for (int k = lo; k <= hi; ++k) jobs.push_back({r, s, k});
    }
  }

  std::vector<std::vector<DualRhombus>> found(jobs.size());
  std::string irregular;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(jobs.size()); ++i) {
    const Job& job = jobs[i];
    const int lo = static_cast<int>(std::ceil(-radius + grid.offsets[job.s]));
    const int hi = static_cast<int>(std::floor(radius + grid.offsets[job.s]));
    for (int k_s = lo; k_s <= hi; ++k_s) {
      try {
        DualRhombus d = dualize_intersection(grid, job.r, job.k_r, job.s, k_s);
        if (std::abs(d.rhombus.intersection) <= radius) found[i].push_back(std::move(d));
      } catch (const IrregularIntersection& e) {
        // Only intersections inside the patch matter.
        const cplx er = grid.direction(job.r), es = grid.direction(job.s);
        const double p = job.k_r - grid.offsets[job.r], q = k_s - grid.offsets[job.s];
        const double det = er.real() * es.imag() - er.imag() * es.real();
        const cplx z0{(p * es.imag() - q * er.imag()) / det, (er.real() * q - es.real() * p) / det};
        if (std::abs(z0) <= radius) {
#pragma omp critical
          irregular = e.what();
        }
      }
    }
  }
  if (!irregular.empty()) throw IrregularPentagrid(irregular);

  // Merge in job order so vertex ids do not depend on the thread count.
  std::unordered_map<IntegerVector, int, IntegerVectorHash> ids;
  for (auto& bucket : found) {
    for (auto& d : bucket) {
      for (int c = 0; c < 4; ++c) {
        auto [it, inserted] = ids.try_emplace(d.kvecs[c], static_cast<int>(patch.vertices.size()));
        if (inserted) patch.vertices.push_back({d.kvecs[c], d.positions[c]});
        d.rhombus.corners[c] = it->second;
      }
      patch.rhombi.push_back(d.rhombus);
    }
  }
  return patch;
}

TilingPatch multigrid_patch(const std::vector<double>& offsets, double radius) {
  return generate_patch(Pentagrid::multigrid(offsets), radius);
}

namespace {

std::vector<Segment> decorate(Shape shape, int base_index, const std::array<cplx, 4>& pos) {
  // Anchor on the corner of index 1 or 4; a and b run to the (1,0) and (0,1)
  // corners, the far corner is anchor + a + b.
  const bool at_base = base_index == 1;
  const cplx o = at_base ? pos[0] : pos[3];
  const cplx a = pos[1] - o;
  const cplx b = pos[2] - o;
  const double c36 = std::cos(kPi / 5.0);
  const double c72 = std::cos(2.0 * kPi / 5.0);
  const double near = 0.5 * c72;             // 0.1545
  const double far = 0.5 + 0.5 * (1.0 - c72);  // 0.8455
  auto oa = [&](double t) { return o + t * a; };
  auto ob = [&](double t) { return o + t * b; };
  auto af = [&](double t) { return o + a + t * b; };
  auto bf = [&](double t) { return o + b + t * a; };
  if (shape == Shape::fat) {
    return {{oa(c36), ob(c36)}, {oa(c36), af(0.5)}, {ob(c36), bf(0.5)},
            {af(0.5), bf(far)}, {af(far), bf(0.5)}};
  }
  return {{oa(c36), af(0.5)}, {oa(c36), af(near)}, {ob(c36), bf(0.5)},
          {ob(c36), bf(near)}, {af(0.5), bf(0.5)}};
}

}  // namespace

std::vector<Segment> ammann_decorate(const DualRhombus& r) {
  if (r.kvecs[0].k.size() != 5) return {};
  return decorate(r.rhombus.shape, r.kvecs[0].index(), r.positions);
}

std::vector<Segment> ammann_decorate(const Rhombus& r, const TilingPatch& patch) {
  if (patch.grid.order() != 5) return {};
  std::array<cplx, 4> pos;
  for (int c = 0; c < 4; ++c) pos[c] = patch.vertices[r.corners[c]].position;
  return decorate(r.shape, patch.vertices[r.corners[0]].kvec.index(), pos);
}

}  // namespace ql
