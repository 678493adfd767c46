#pragma once

namespace ql {

enum class Regime { low_temperature, high_temperature };

const char* to_string(Regime r);
Regime parse_regime(const char* s);

/// Complete elliptic integral of the first kind, K(m) = ∫_0^{π/2} dθ / √(1 − m² sin²θ),
/// for modulus 0 ≤ m < 1. Computed with the arithmetic-geometric mean.
double complete_K(double m);

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

/// Jacobi sn, cn, dn of real argument u and modulus 0 ≤ m < 1 (descending Landen).
JacobiValues jacobi(double u, double m);

/// sn/cn; throws PoleAt where cn(u, m) vanishes.
double sc(double u, double m);
/// cn/sn; throws PoleAt where sn(u, m) vanishes.
double cs(double u, double m);

/// Elliptic parametrization of the pentagrid Ising couplings: modulus k,
/// complementary modulus k' and quarter period K(k').
struct EllipticParams {
  double k = 0.5;
  double k_prime = 0.0;
  double quarter_period = 0.0;
  Regime regime = Regime::low_temperature;

  static EllipticParams make(double k, Regime regime);
};

}  // namespace ql
