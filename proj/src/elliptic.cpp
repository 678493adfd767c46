#include "quasilattice/elliptic.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "quasilattice/errors.hpp"

namespace ql {

const char* to_string(Regime r) {
  return r == Regime::low_temperature ? "low" : "high";
}

Regime parse_regime(const char* s) {
  if (std::strcmp(s, "low") == 0) return Regime::low_temperature;
  if (std::strcmp(s, "high") == 0) return Regime::high_temperature;
  throw InvalidArgument(std::string("regime must be 'low' or 'high', got '") + s + "'");
}

namespace {

void check_modulus(double m) {
  if (!(m >= 0.0 && m < 1.0)) {
    throw ModulusOutOfRange("modulus must lie in [0, 1), got " + std::to_string(m));
  }
}

// Below this magnitude cn or sn is treated as an exact zero of sc / cs.
constexpr double kPoleTolerance = 1e-14;

}  // namespace

double complete_K(double m) {
  check_modulus(m);
  double a = 1.0;
  double b = std::sqrt((1.0 - m) * (1.0 + m));
  // AGM converges quadratically; a and b can end up alternating between
  // neighbouring doubles, so stop a few ulps out and cap the steps.
  for (int i = 0; i < 64 && std::abs(a - b) > 4e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

JacobiValues jacobi(double u, double m) {
  check_modulus(m);
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};

  constexpr int kMaxSteps = 32;
  std::array<double, kMaxSteps + 1> a{};
  std::array<double, kMaxSteps + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt((1.0 - m) * (1.0 + m));
  c[0] = m;
  int n = 0;
  while (std::abs(c[n]) > 1e-17 && n < kMaxSteps) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt((1.0 - m * sn) * (1.0 + m * sn));
  return {sn, cn, dn};
}

double sc(double u, double m) {
  const auto v = jacobi(u, m);
  if (std::abs(v.cn) < kPoleTolerance) {
    throw PoleAt("sc(" + std::to_string(u) + ", " + std::to_string(m) + ") has cn = 0");
  }
  return v.sn / v.cn;
}

double cs(double u, double m) {
  const auto v = jacobi(u, m);
  if (std::abs(v.sn) < kPoleTolerance) {
    throw PoleAt("cs(" + std::to_string(u) + ", " + std::to_string(m) + ") has sn = 0");
  }
  return v.cn / v.sn;
}

EllipticParams EllipticParams::make(double k, Regime regime) {
  if (!(k > 0.0 && k < 1.0)) {
    throw ModulusOutOfRange("elliptic modulus k must lie in (0, 1), got " + std::to_string(k));
  }
  EllipticParams p;
  p.k = k;
  p.k_prime = std::sqrt((1.0 - k) * (1.0 + k));
  p.quarter_period = complete_K(p.k_prime);
  p.regime = regime;
  return p;
}

}  // namespace ql
