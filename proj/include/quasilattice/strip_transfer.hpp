#pragma once

#include <span>
#include <utility>
#include <vector>

#include "quasilattice/elliptic.hpp"

namespace ql {

/// Diagonal-to-diagonal transfer matrix of a Z-invariant Ising model on a
/// cylinder. Vertical rapidity lines (all carrying `vertical`) cut the
/// circumference into 2·width faces; a row holds `width` spins on alternating
/// faces. Each horizontal rapidity line is one half step; a spin couples
/// across the line to its two diagonal neighbours with K̄(u, v) on the
/// up-right edge and K(u, v) on the up-left edge.
///
/// Spins are bit-encoded: bit m set means spin m is −1.
class StripTransfer {
 public:
  StripTransfer(const EllipticParams& params, int width, double vertical, double background,
                double field = 0.0);

  int width() const { return width_; }
  std::size_t dimension() const { return std::size_t{1} << width_; }

  /// One half step across a horizontal line with rapidity u, leaving a row of
  /// the given parity. `transpose` applies the transposed step.
  void half_step(std::span<const double> in, std::span<double> out, double u, int parity,
                 bool transpose = false) const;

  /// Dominant right (or left) eigenvector of the two-row background transfer
  /// matrix, normalized to unit 2-norm and positive.
  std::vector<double> dominant(bool left) const;

  /// ⟨σσ⟩ of two spins in the same column separated by horizontal lines with
  /// the given rapidities (even count), in the infinite-height cylinder.
  double pair_correlation(std::span<const double> rapidities) const;

  /// ⟨σ⟩ of one spin with the uniform field βB on every spin.
  double magnetization() const;

 private:
  void apply(std::span<const double> in, std::span<double> out, double ka, double kb,
             int parity, bool transpose) const;
  void step_parity0(std::span<const double> in, std::span<double> out, double ka,
                    double kb) const;
  std::pair<double, double> row_couplings(double u) const;
  void apply_field(std::span<double> v) const;

  EllipticParams params_;
  int width_;
  double vertical_;
  double background_;
  double field_;
  mutable std::vector<double> right_;
  mutable std::vector<double> left_;
};

struct StripEstimate {
  double value = 0.0;
  double error = 0.0;  // change when the narrowest width is dropped from the fit
  std::vector<double> raw;
};

/// Infinite-plane pair correlation from cylinders of widths
/// min_width, min_width + 2, …, max_width, fitted to
/// x∞ + kᴺ N^{-1/2} (c₀ + c₁/N + c₂/N²). Entries must lie within
/// [0, 0.8 K(k')] so every coupling stays away from its pole. The strips
/// (and their eigenvectors) are kept for repeated queries.
class StripOracle {
 public:
  StripOracle(const EllipticParams& p, int min_width = 6, int max_width = 18);
  StripEstimate correlation(std::span<const double> rapidities) const;

 private:
  EllipticParams params_;
  std::vector<int> widths_;
  std::vector<StripTransfer> strips_;
};

/// Width-extrapolation fit used by strip_correlation, exposed for reuse.
double strip_fit(double k, std::span<const int> widths, std::span<const double> values);

}  // namespace ql
