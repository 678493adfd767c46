#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "quasilattice/errors.hpp"
#include "quasilattice/pentagrid.hpp"

using namespace ql;

namespace {

const double tau = (1.0 + std::sqrt(5.0)) / 2.0;

double area(const TilingPatch& p, const Rhombus& r) {
  const cplx u = p.vertices[r.corners[1]].position - p.vertices[r.corners[0]].position;
  const cplx v = p.vertices[r.corners[2]].position - p.vertices[r.corners[0]].position;
  return std::abs((std::conj(u) * v).imag());
}

bool inside(const TilingPatch& p, const Rhombus& r, cplx z) {
  const cplx o = p.vertices[r.corners[0]].position;
  const cplx u = p.vertices[r.corners[1]].position - o;
  const cplx v = p.vertices[r.corners[2]].position - o;
  const double det = (std::conj(u) * v).imag();
  const double a = (std::conj(z - o) * v).imag() / det;
  const double b = (std::conj(u) * (z - o)).imag() / det;
  return a > 0 && a < 1 && b > 0 && b < 1;
}

}  // namespace

TEST_CASE("mesh vectors") {
  const auto g = Pentagrid::penrose();
  const auto k = mesh_vector(g, 0.0);
  CHECK(k.k == std::vector<int>{1, 1, 0, 1, 0});
  CHECK(k.index() == 3);
  CHECK_FALSE(k.even());

  // Crossing one line of family j changes K_j by one.
  for (int j = 0; j < 5; ++j) {
    const cplx e = g.direction(j);
    const double t = std::ceil(g.grid_value(j, 0.0)) - g.grid_value(j, 0.0);
    const auto before = mesh_vector(g, (t - 1e-6) * e);
    const auto after = mesh_vector(g, (t + 1e-6) * e);
    for (int i = 0; i < 5; ++i) CHECK(after.k[i] - before.k[i] == (i == j ? 1 : 0));
  }
  CHECK_THROWS_AS(mesh_vector(g, (1.0 - 0.17) * g.direction(0)), OnGridLine);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-300.0, 300.0);
  bool ok = true;
  for (int i = 0; i < 100000; ++i) {
    const int idx = mesh_vector(g, {U(rng), U(rng)}).index();
    ok = ok && idx >= 1 && idx <= 4;
  }
  CHECK(ok);
}

TEST_CASE("vertex positions") {
  CHECK(std::abs(vertex_position({{0, 0, 0, 0, 0}})) == 0.0);
  const cplx v = vertex_position({{1, 1, 0, 1, 0}});
  CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(0.363271).epsilon(1e-6));
  CHECK(std::abs(vertex_position({{1, 0, 0, 0, 0}}) - 1.0) < 1e-15);
}

TEST_CASE("dualization") {
  const auto g = Pentagrid::penrose();
  CHECK(dualize_intersection(g, 0, 0, 1, 0).rhombus.shape == Shape::fat);
  CHECK(dualize_intersection(g, 0, 0, 2, 0).rhombus.shape == Shape::skinny);
  const auto d = dualize_intersection(g, 1, 3, 4, -2);
  std::set<std::pair<int, int>> eps;
  for (int c = 0; c < 4; ++c) {
    eps.insert({d.kvecs[c].k[1] - d.kvecs[0].k[1], d.kvecs[c].k[4] - d.kvecs[0].k[4]});
  }
  CHECK(eps == std::set<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto zero = Pentagrid::penrose({0, 0, 0, 0, 0});
  CHECK_THROWS_AS(dualize_intersection(zero, 0, 0, 1, 0), IrregularIntersection);
  CHECK_THROWS_AS(generate_patch(zero, 2.0), IrregularPentagrid);
  CHECK_THROWS_AS(dualize_intersection(g, 1, 0, 1, 2), InvalidArgument);
}

TEST_CASE("large patch") {
  const auto p = generate_patch(Pentagrid::penrose(), 21.0);
  REQUIRE(p.rhombi.size() >= 10000);
  for (const auto& v : p.vertices) {
    CHECK(v.kvec.index() >= 1);
    CHECK(v.kvec.index() <= 4);
  }
  int bad_side = 0, bad_parity = 0;
  for (const auto& [a, b] : p.edges()) {
    if (std::abs(std::abs(p.vertices[a].position - p.vertices[b].position) - 1.0) > 1e-12) ++bad_side;
    if (p.vertices[a].even() == p.vertices[b].even()) ++bad_parity;
  }
  CHECK(bad_side == 0);
  CHECK(bad_parity == 0);
  const double ratio = static_cast<double>(p.count(Shape::fat)) / p.count(Shape::skinny);
  CHECK(std::abs(ratio - tau) / tau < 0.01);
}

TEST_CASE("fat/skinny ratio over doublings") {
  double prev = 1.0;
  for (double r : {10.0, 20.0, 40.0, 80.0}) {
    const auto p = generate_patch(Pentagrid::penrose(), r);
    const double dev = std::abs(static_cast<double>(p.count(Shape::fat)) / p.count(Shape::skinny) - tau);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev / tau < 0.01);
}

TEST_CASE("empty and bijective") {
  CHECK(generate_patch(Pentagrid::penrose(), 0.0).rhombi.empty());
  const auto g = Pentagrid::penrose();
  const double radius = 9.0;
  const auto p = generate_patch(g, radius);
  // Count pairwise intersections directly.
  std::set<std::array<int, 4>> expected;
  for (int r = 0; r < 5; ++r) {
    for (int s = r + 1; s < 5; ++s) {
      const cplx er = g.direction(r), es = g.direction(s);
      const double det = er.real() * es.imag() - er.imag() * es.real();
      for (int kr = -20; kr <= 20; ++kr) {
        for (int ks = -20; ks <= 20; ++ks) {
          const double a = kr - g.offsets[r], b = ks - g.offsets[s];
          const cplx z{(a * es.imag() - b * er.imag()) / det, (er.real() * b - es.real() * a) / det};
          if (std::abs(z) <= radius) expected.insert({r, s, kr, ks});
        }
      }
    }
  }
  std::set<std::array<int, 4>> got;
  for (const auto& rh : p.rhombi) got.insert({rh.r, rh.s, rh.k_r, rh.k_s});
  CHECK(got.size() == p.rhombi.size());
  CHECK(got == expected);
  std::set<std::vector<int>> keys;
  for (const auto& v : p.vertices) keys.insert(v.kvec.k);
  CHECK(keys.size() == p.vertices.size());
}

TEST_CASE("rhombi tile without gaps or overlaps") {
  const auto p = generate_patch(Pentagrid::penrose(), 12.0);
  const double rc = p.complete_radius() - 1.5;
  REQUIRE(rc > 10.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-rc, rc);
  int wrong = 0, samples = 0;
  while (samples < 2000) {
    const cplx z{U(rng), U(rng)};
    if (std::abs(z) > rc) continue;
    ++samples;
    int cover = 0;
    for (const auto& r : p.rhombi) cover += inside(p, r, z);
    wrong += cover != 1;
  }
  CHECK(wrong == 0);

  const auto big = generate_patch(Pentagrid::penrose(), 30.0);
  const double disc = big.complete_radius() - 2.0;
  double total = 0.0;
  for (const auto& r : big.rhombi) {
    cplx c = 0.0;
    for (int i : r.corners) c += big.vertices[i].position;
    if (std::abs(c / 4.0) <= disc) total += area(big, r);
  }
  CHECK(std::abs(total / (std::numbers::pi * disc * disc) - 1.0) < 0.005);
}

TEST_CASE("complete radius") {
  for (double r : {6.0, 10.0}) {
    const auto small = generate_patch(Pentagrid::penrose(), r);
    const auto big = generate_patch(Pentagrid::penrose(), r + 8.0);
    std::set<std::vector<int>> have;
    for (const auto& v : small.vertices) have.insert(v.kvec.k);
    int missing = 0;
    for (const auto& v : big.vertices) {
      if (std::abs(v.position) <= small.complete_radius() && !have.contains(v.kvec.k)) ++missing;
    }
    CHECK(missing == 0);
  }
}

TEST_CASE("multigrids") {
  const auto five = multigrid_patch({0.17, 0.23, -0.37, 0.11, -0.14}, 6.0);
  const auto penrose = generate_patch(Pentagrid::penrose(), 6.0);
  CHECK(patch_to_json(five) == patch_to_json(penrose));

  const auto four = multigrid_patch({0.23, 0.31, 0.17, 0.41}, 10.0);
  REQUIRE(!four.rhombi.empty());
  std::set<int> angles;
  for (const auto& r : four.rhombi) angles.insert(r.angle_units);
  CHECK(angles == std::set<int>{1, 2});  // 45° rhombi and squares

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  std::vector<double> off(7);
  for (double& x : off) x = U(rng);
  const auto seven = multigrid_patch(off, 6.0);
  double worst = 0.0;
  for (const auto& [a, b] : seven.edges()) {
    worst = std::max(worst, std::abs(std::abs(seven.vertices[a].position - seven.vertices[b].position) - 1.0));
  }
  CHECK(worst < 1e-12);
  CHECK_THROWS_AS(multigrid_patch({0.1, 0.2, 0.3}, 3.0), InvalidArgument);
}

TEST_CASE("Ammann bars") {
  const double c72 = std::cos(2 * std::numbers::pi / 5);
  CHECK(0.5 + (1 - c72) / 2 + c72 / 2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::cos(std::numbers::pi / 5) == doctest::Approx(0.809017).epsilon(1e-6));

  // Pieces meet across every shared edge, continuing straight.
  const auto p = generate_patch(Pentagrid::penrose(), 8.0);
  std::map<std::pair<int, int>, std::vector<int>> owners;
  for (std::size_t i = 0; i < p.rhombi.size(); ++i) {
    const auto& c = p.rhombi[i].corners;
    for (auto [a, b] : {std::pair{c[0], c[1]}, {c[1], c[3]}, {c[3], c[2]}, {c[2], c[0]}}) {
      owners[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(i));
    }
  }
  int shared = 0, broken = 0;
  for (const auto& [edge, rs] : owners) {
    if (rs.size() != 2) continue;
    const cplx A = p.vertices[edge.first].position, B = p.vertices[edge.second].position;
    auto ends = [&](int r) {
      std::vector<std::pair<cplx, cplx>> out;  // point on the edge, direction into the rhombus
      for (const auto& s : ammann_decorate(p.rhombi[r], p)) {
        for (auto [x, y] : {std::pair{s.a, s.b}, {s.b, s.a}}) {
          const cplx t = (x - A) / (B - A);
          if (std::abs(t.imag()) < 1e-9 && t.real() > 1e-9 && t.real() < 1 - 1e-9) out.push_back({x, y - x});
        }
      }
      return out;
    };
    const auto e0 = ends(rs[0]), e1 = ends(rs[1]);
    if (e0.size() != e1.size()) ++broken;
    for (const auto& [x, d] : e0) {
      ++shared;
      bool ok = false;
      for (const auto& [y, f] : e1) {
        const cplx turn = std::conj(d) * f;
        if (std::abs(x - y) < 1e-9 && std::abs(turn.imag()) < 1e-9 * std::abs(turn) && turn.real() < 0) ok = true;
      }
      broken += !ok;
    }
  }
  CHECK(shared > 1000);
  CHECK(broken == 0);
}

TEST_CASE("json export") {
  const auto p = generate_patch(Pentagrid::penrose(), 4.0);
  const auto j = nlohmann::json::parse(patch_to_json(p));
  CHECK(j["n"] == 5);
  CHECK(j["gamma"].size() == 5);
  CHECK(j["vertices"].size() == p.vertices.size());
  CHECK(j["rhombi"].size() == p.rhombi.size());
  for (const auto& r : j["rhombi"]) {
    CHECK((r["shape"] == "fat" || r["shape"] == "skinny"));
    CHECK(r["corners"].size() == 4);
  }
  CHECK(j["vertices"][0]["k"].size() == 5);
  const auto svg = patch_to_svg(p, true);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<line") != std::string::npos);
}
