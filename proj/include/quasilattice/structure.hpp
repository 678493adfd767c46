#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <vector>

#include "quasilattice/correlation.hpp"
#include "quasilattice/ising.hpp"
#include "quasilattice/pentagrid.hpp"

namespace ql {

/// Multiset of rapidities of the lines crossing between two same-parity
/// vertices, in the canonical form the correlation engine expects. Grid j
/// contributes |ΔK_j| lines, oriented to cross the segment a → b from left
/// to right. Throws MixedParity.
RapidityMultiset crossing_rapidities(const RapidityAssignment& assign, const TilingVertex& a,
                                     const TilingVertex& b);
/// Same, as oriented indices m (rapidity m·K'/5), rotated onto 0..4.
std::vector<int> crossing_indices(const IntegerVector& delta);

/// ⟨σσ⟩ − ⟨σ⟩² for the crossing multiset.
double connected_correlation(CorrelationTable& table, Regime regime, const RapidityMultiset& rap);

/// Closed square of n × n wavevectors, q_i = lo + (hi − lo)·i/(n − 1).
struct QGrid {
  int n = 128;
  double lo = -4.0 * std::numbers::pi;
  double hi = 4.0 * std::numbers::pi;

  double node(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

/// Even-sublattice spins within `radius` of the origin of the tiling.
struct SpinSet {
  double radius = 0.0;
  std::vector<TilingVertex> spins;
};

/// Pentagrid patch large enough that every vertex with |f| ≤ radius is present.
TilingPatch patch_covering(const Pentagrid& grid, double radius);
/// Throws TruncationExceedsPatch if the patch does not cover `radius`.
SpinSet select_spins(const TilingPatch& patch, double radius);

/// Ordered spin pairs with |r − r'| ≤ cutoff grouped by ΔK, which fixes both
/// the displacement and the crossing multiset. The outer key (ΔK₀, ΔK₁) is
/// the cell offset on the lattice of grids 0 and 1.
struct PairClass {
  std::array<int, 5> delta{};
  std::complex<double> displacement;
  long long count = 0;
};
std::vector<PairClass> pair_classes(const SpinSet& s, double cutoff);

/// Positive-definite taper (1 − r/T)⁴₊ (4r/T + 1). Multiplying the pair sum
/// by it keeps the finite estimator a nonnegative quadratic form.
double taper(double r, double truncation);

struct ChiOptions {
  double truncation = 8.0;
  QGrid grid{};
};

struct ChiMap {
  QGrid grid;
  std::vector<double> values;  // row-major, row iy ↔ q_y = node(iy)
  double truncation_error = 0.0;
  double truncation = 0.0;
  double spin_radius = 0.0;
  std::size_t spins = 0;
  std::size_t classes = 0;
  std::size_t multisets = 0;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.n + ix]; }
};

/// βχ(q) = (1/N) Σ_{r,r'∈S} W(|r−r'|) C(r, r') cos q·(r − r'), summed per
/// pair class and parallel over q. Fills the correlation table first.
ChiMap chi_map(const SpinSet& s, CorrelationTable& table, Regime regime, const ChiOptions& opt);
/// The same double sum pair by pair, serial; the reference for the grouping.
ChiMap chi_map_naive(const SpinSet& s, CorrelationTable& table, Regime regime,
                     const ChiOptions& opt);

/// F(q) = k'^{1/2} |Σ_r e^{iq·r}|² / N below criticality, zero above.
ChiMap bragg_map(const SpinSet& s, const EllipticParams& p, const QGrid& grid);
ChiMap bragg_map_serial(const SpinSet& s, const EllipticParams& p, const QGrid& grid);

}  // namespace ql
