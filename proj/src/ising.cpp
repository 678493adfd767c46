#include "quasilattice/ising.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quasilattice/errors.hpp"

namespace ql {

double coupling_sinh(const EllipticParams& p, CouplingKind kind, double u, double v) {
  const double x = u - v;
  const bool low = p.regime == Regime::low_temperature;
  if (kind == CouplingKind::K) {
    const double s = sc(x, p.k_prime);
    return low ? s : p.k * s;
  }
  const double c = cs(x, p.k_prime);
  return low ? c / p.k : c;
}

Coupling coupling(const EllipticParams& p, CouplingKind kind, double u, double v) {
  return {0.5 * std::asinh(coupling_sinh(p, kind, u, v)), kind, u, v};
}

StarTriangleCouplings star_triangle_couplings(const EllipticParams& p, double u, double v,
                                              double w) {
  using enum CouplingKind;
  StarTriangleCouplings c;
  c.star = {coupling(p, K_bar, u, v).value, coupling(p, K, u, w).value,
            coupling(p, K_bar, v, w).value};
  c.triangle = {coupling(p, K, v, w).value, coupling(p, K_bar, u, w).value,
                coupling(p, K, u, v).value};
  return c;
}

StarTriangleResult star_triangle_residual(const StarTriangleCouplings& c) {
  double r_min = 0.0;
  double r_max = 0.0;
  double r_ref = 0.0;
  double lhs[8];
  double rhs[8];
  for (int a = 0; a < 8; ++a) {
    const double s1 = (a & 1) ? -1.0 : 1.0;
    const double s2 = (a & 2) ? -1.0 : 1.0;
    const double s3 = (a & 4) ? -1.0 : 1.0;
    lhs[a] = 0.0;
    for (double s4 : {1.0, -1.0}) {
      lhs[a] += std::exp(c.star[0] * s1 * s4 + c.star[1] * s2 * s4 + c.star[2] * s3 * s4);
    }
    rhs[a] = std::exp(c.triangle[0] * s1 * s2 + c.triangle[1] * s1 * s3 + c.triangle[2] * s2 * s3);
    const double r = lhs[a] / rhs[a];
    if (a == 0) {
      r_ref = r_min = r_max = r;
    } else {
      r_min = std::min(r_min, r);
      r_max = std::max(r_max, r);
    }
  }
  StarTriangleResult res;
  res.r_factor = r_ref;
  res.r_spread = (r_max - r_min) / r_ref;
  for (int a = 0; a < 8; ++a) {
    res.residual = std::max(res.residual, std::abs(lhs[a] - r_ref * rhs[a]) / lhs[a]);
  }
  return res;
}

StarTriangleResult star_triangle_check(const EllipticParams& p, double u, double v, double w) {
  return star_triangle_residual(star_triangle_couplings(p, u, v, w));
}

double order_parameter(const EllipticParams& p) {
  if (p.regime == Regime::high_temperature) return 0.0;
  return std::pow(p.k_prime, 0.25);
}

double RapidityAssignment::rapidity(int oriented_grid) const {
  const int m = ((oriented_grid % 10) + 10) % 10;
  return m * quarter_period / 5.0;
}

int RapidityAssignment::oriented_index(int family, int sign) {
  const int m = sign > 0 ? -2 * family : 5 - 2 * family;
  return ((m % 10) + 10) % 10;
}

double RapidityAssignment::rapidity_of_direction(double angle) const {
  const double u = (std::numbers::pi / 2.0 - angle) / std::numbers::pi * quarter_period;
  const double period = 2.0 * quarter_period;
  double r = std::fmod(u, period);
  if (r < 0.0) r += period;
  return r;
}

double diagonal_coupling(const EllipticParams& p, int l) {
  if (l < 1 || l > 4) throw InvalidArgument("diagonal class l must be 1..4, got " + std::to_string(l));
  const double u = l * p.quarter_period / 5.0;
  return coupling(p, CouplingKind::K, u, 0.0).value;
}

}  // namespace ql
