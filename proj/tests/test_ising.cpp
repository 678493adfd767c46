#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "quasilattice/errors.hpp"
#include "quasilattice/ising.hpp"
#include "quasilattice/kac_ward.hpp"
#include "quasilattice/oracle.hpp"
#include "quasilattice/strip_transfer.hpp"

using namespace ql;
using enum CouplingKind;

TEST_CASE("coupling basics") {
  for (auto r : {Regime::low_temperature, Regime::high_temperature}) {
    const auto p = EllipticParams::make(0.6, r);
    CHECK(coupling(p, K, 0.3, 0.3).value == 0.0);
    // Reversing a rapidity line (u → u + K') turns K into K̄.
    for (double u : {0.1, 0.5, 0.9}) {
      for (double v : {0.0, 0.2}) {
        const double kk = p.quarter_period;
        CHECK(coupling(p, K, u * kk, v * kk).value ==
              doctest::Approx(coupling(p, K_bar, v * kk + kk, u * kk).value).epsilon(1e-12));
      }
    }
  }
  const auto lo = EllipticParams::make(0.6, Regime::low_temperature);
  const auto hi = EllipticParams::make(0.6, Regime::high_temperature);
  const double u = 0.37 * lo.quarter_period;
  CHECK(coupling_sinh(hi, K, u, 0) / coupling_sinh(lo, K, u, 0) == doctest::Approx(0.6));
  CHECK(coupling_sinh(lo, K_bar, u, 0) / coupling_sinh(hi, K_bar, u, 0) == doctest::Approx(1 / 0.6));
  // The high-regime K and low-regime K̄ are Kramers–Wannier duals.
  CHECK(coupling_sinh(hi, K, u, 0) * coupling_sinh(lo, K_bar, u, 0) == doctest::Approx(1.0));
}

TEST_CASE("star-triangle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> kd(0.05, 0.95), ud(0.02, 0.98);
  for (auto r : {Regime::low_temperature, Regime::high_temperature}) {
    double worst = 0.0, spread = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto p = EllipticParams::make(kd(rng), r);
      std::array<double, 3> x{ud(rng), ud(rng), ud(rng)};
      std::sort(x.begin(), x.end(), std::greater<>());
      const auto res = star_triangle_check(p, x[0] * p.quarter_period, x[1] * p.quarter_period, x[2] * p.quarter_period);
      worst = std::max(worst, res.residual);
      spread = std::max(spread, res.r_spread);
    }
    CHECK(worst < 1e-10);
    CHECK(spread < 1e-10);
  }

  const auto p = EllipticParams::make(0.5, Regime::low_temperature);
  auto c = star_triangle_couplings(p, 0.8 * p.quarter_period, 0.5 * p.quarter_period, 0.1 * p.quarter_period);
  c.star[1] += 1e-3;
  CHECK(star_triangle_residual(c).residual > 1e-4);
}

TEST_CASE("order parameter") {
  CHECK(order_parameter(EllipticParams::make(0.7, Regime::low_temperature)) == doctest::Approx(std::pow(0.51, 0.125)).epsilon(1e-14));
  CHECK(std::abs(order_parameter(EllipticParams::make(0.7, Regime::low_temperature)) - 0.91927674) < 1e-8);
  for (double k : {0.1, 0.5, 0.9}) CHECK(order_parameter(EllipticParams::make(k, Regime::high_temperature)) == 0.0);
  CHECK(order_parameter(EllipticParams::make(1e-6, Regime::low_temperature)) == doctest::Approx(1.0));
}

TEST_CASE("diagonal couplings") {
  for (auto r : {Regime::low_temperature, Regime::high_temperature}) {
    const auto p = EllipticParams::make(0.7, r);
    // Longer rhombus diagonal, weaker bond: l = 1 is the long skinny diagonal.
    for (int l = 1; l < 4; ++l) CHECK(diagonal_coupling(p, l) < diagonal_coupling(p, l + 1));
    CHECK(diagonal_coupling(p, 1) > 0.0);
  }
  const auto p = EllipticParams::make(0.7, Regime::low_temperature);
  CHECK_THROWS_AS(diagonal_coupling(p, 0), InvalidArgument);
  CHECK_THROWS_AS(diagonal_coupling(p, 5), InvalidArgument);
}

TEST_CASE("rapidity assignment") {
  const RapidityAssignment a{2.0};
  for (int m = 0; m < 5; ++m) CHECK(a.rapidity(m + 5) - a.rapidity(m) == doctest::Approx(2.0));
  CHECK(a.rapidity(-1) == doctest::Approx(a.rapidity(9)));
  for (int j = 0; j < 5; ++j) {
    CHECK((RapidityAssignment::oriented_index(j, 1) + 5) % 10 == RapidityAssignment::oriented_index(j, -1));
  }
}

TEST_CASE("enumeration oracle") {
  const auto one = oracle_enumerate({1, {}}, 0, 0, 0.0);
  CHECK(one.magnetization == 0.0);
  CHECK(std::exp(one.log_z) == doctest::Approx(2.0));
  for (double j : {-0.7, 0.2, 1.3}) {
    const auto two = oracle_enumerate({2, {{0, 1, j}}}, 0, 1, 0.0);
    CHECK(two.pair == doctest::Approx(std::tanh(j)).epsilon(1e-14));
  }
  // Single spin in a field: ⟨σ⟩ = tanh B.
  CHECK(oracle_enumerate({1, {}}, 0, 0, 0.4).magnetization == doctest::Approx(std::tanh(0.4)));
  SpinGraph ring{12, {}};
  for (int i = 0; i < 12; ++i) ring.bonds.push_back({i, (i + 1) % 12, 0.3 + 0.05 * i});
  CHECK(std::abs(oracle_enumerate(ring, 0, 5, 0.0).magnetization) < 1e-14);
  CHECK_THROWS_AS(oracle_enumerate({25, {}}, 0, 1, 0.0), TooLarge);
}

TEST_CASE("Kac-Ward sum against enumeration") {
  // 4 × 4 square lattice, random ferromagnetic bonds.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> J(0.1, 0.9);
  PlanarGraph g;
  SpinGraph s{16, {}};
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) g.add_vertex({static_cast<double>(x), static_cast<double>(y)});
  }
  std::vector<double> t;
  double log_pref = 16.0 * std::log(2.0);
  auto bond = [&](int a, int b) {
    const double j = J(rng);
    g.add_edge(a, b);
    s.bonds.push_back({a, b, j});
    t.push_back(std::tanh(j));
    log_pref += std::log(std::cosh(j));
  };
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      if (x < 3) bond(4 * y + x, 4 * y + x + 1);
      if (y < 3) bond(4 * y + x, 4 * y + x + 4);
    }
  }
  const auto exact = oracle_enumerate(s, 0, 15, 0.0);
  const double lz = log_even_subgraph_sum(g, t);
  CHECK(lz + log_pref == doctest::Approx(exact.log_z).epsilon(1e-12));

  // ⟨σ_0 σ_15⟩: flip t → 1/t along a path and multiply by the path weight.
  auto flipped = t;
  double path = 0.0;
  // Path 0 → 1 → 2 → 3 (row bonds) then up the last column.
  const std::vector<int> edges = {0, 2, 4, 6, 13, 20};
  for (int e : edges) {
    path += std::log(flipped[e]);
    flipped[e] = 1.0 / flipped[e];
  }
  const double pair = std::exp(path + log_even_subgraph_sum(g, flipped) - lz);
  CHECK(pair == doctest::Approx(exact.pair).epsilon(1e-10));
}

TEST_CASE("strip transfer") {
  const auto p = EllipticParams::make(0.5, Regime::low_temperature);
  const StripTransfer st(p, 6, -0.1 * p.quarter_period, 0.4 * p.quarter_period);
  CHECK(std::abs(st.magnetization()) < 1e-12);
  const double zero[] = {0.0, 0.0};
  const double c = st.pair_correlation(zero);
  CHECK(c > 0.0);
  CHECK(c < 1.0);
  const StripTransfer field(p, 6, -0.1 * p.quarter_period, 0.4 * p.quarter_period, 0.01);
  CHECK(field.magnetization() > 0.0);
  CHECK_THROWS(field.pair_correlation(zero));

  // The extrapolation recovers an exact model of its own form.
  std::vector<int> widths{6, 8, 10, 12, 14};
  std::vector<double> values;
  for (int n : widths) values.push_back(0.8 + std::pow(0.5, n) / std::sqrt(n) * (0.3 - 1.1 / n + 2.0 / (n * n)));
  CHECK(strip_fit(0.5, widths, values) == doctest::Approx(0.8).epsilon(1e-12));
}
