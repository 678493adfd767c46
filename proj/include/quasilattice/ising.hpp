#pragma once

#include <array>

#include "quasilattice/elliptic.hpp"

namespace ql {

/// Orientation class of an Ising edge relative to the two rapidity lines
/// crossing it.
enum class CouplingKind { K, K_bar };

struct Coupling {
  double value = 0.0;  // βJ
  CouplingKind kind = CouplingKind::K;
  double u = 0.0;
  double v = 0.0;
};

/// βJ from the rapidity pair (u, v). Low regime: sinh 2K = sc(u−v, k') and
/// sinh 2K̄ = k⁻¹ cs(u−v, k'); the high regime moves the factor k onto K.
Coupling coupling(const EllipticParams& p, CouplingKind kind, double u, double v);

/// Right-hand side of sinh(2βJ) for the given kind, before the arcsinh.
double coupling_sinh(const EllipticParams& p, CouplingKind kind, double u, double v);

struct StarTriangleResult {
  double residual = 0.0;  // max_σ |LHS − R·RHS| / |LHS|
  double r_factor = 0.0;  // R from the all-up assignment
  double r_spread = 0.0;  // (max R − min R) / R over the eight assignments
};

/// The three star couplings (σ₁σ₄, σ₂σ₄, σ₃σ₄) and triangle couplings
/// (σ₁σ₂, σ₁σ₃, σ₂σ₃) of one star-triangle instance.
struct StarTriangleCouplings {
  std::array<double, 3> star{};
  std::array<double, 3> triangle{};
};

StarTriangleCouplings star_triangle_couplings(const EllipticParams& p, double u, double v,
                                              double w);
StarTriangleResult star_triangle_residual(const StarTriangleCouplings& c);
StarTriangleResult star_triangle_check(const EllipticParams& p, double u, double v, double w);

/// Spontaneous magnetization k'^{1/4} below criticality, zero above.
double order_parameter(const EllipticParams& p);

/// Oriented grid m ∈ Z₁₀ points along angle π/2 − mπ/5 and carries rapidity
/// u_m = m·K(k')/5; reversing a line shifts m by 5 and u by K(k').
struct RapidityAssignment {
  double quarter_period = 0.0;

  double rapidity(int oriented_grid) const;
  /// Oriented index of pentagrid family j, traversed along +iζ^j (sign > 0) or −iζ^j.
  static int oriented_index(int family, int sign);
  /// Rapidity of a line pointing along `angle` (radians).
  double rapidity_of_direction(double angle) const;
};

/// βJ on the spin diagonal of a rhombus whose even diagonal sits in a wedge
/// of the two grid lines subtending π − l·π/5 (l = 1..4).
double diagonal_coupling(const EllipticParams& p, int l);

}  // namespace ql
