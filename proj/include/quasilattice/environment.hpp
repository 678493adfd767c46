#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "quasilattice/pentagrid.hpp"
#include "quasilattice/raster.hpp"

namespace ql {

inline constexpr int kConfigCount = 24;

/// P(k₀, k₁): the cell between lines k₀−1, k₀ of grid 0 and k₁−1, k₁ of grid 1.
struct Parallelogram {
  int k0 = 0;
  int k1 = 0;
  double alpha = 0.0;
  double beta = 0.0;
  IntegerVector reference;  // index 2
  IntegerVector corner;     // K at the corner where lines k₀ and k₁ cross
};

/// α = τ⁻¹(k₁ − γ₁) + γ₀ + γ₂,  β = τ⁻¹(k₀ − γ₀) + γ₁ + γ₄.
std::array<double, 2> alpha_beta(const Pentagrid& grid, long long k0, long long k1);
Parallelogram parallelogram(const Pentagrid& grid, int k0, int k1);

enum class Parity { even, odd };
const char* to_string(Parity p);
/// Parity of the mesh at the extreme corner: even iff {α} + {β} < 1.
Parity corner_parity(double alpha, double beta);

struct EnvConfig {
  int id = 0;          // 1..24, from the frozen table
  int mesh_count = 0;  // faces of P cut by grids 2, 3, 4
  std::string signature;
  bool reference_inside = true;  // reference vector labels a mesh of P
};

/// Arrangement of the grid 2, 3, 4 lines actually crossing P(k₀, k₁).
/// Throws IrregularPentagrid when a line passes through a corner of P.
EnvConfig classify(const Pentagrid& grid, int k0, int k1);
/// The same from the fractional parts ({α}, {β}) alone (needs Σγ = 0).
EnvConfig classify_fractional(double frac_alpha, double frac_beta);

/// Class signatures in first-encounter order over a row-major scan of
/// ({α}, {β}) pixel centres; the frozen id table is this scan at 512.
std::vector<std::string> signature_scan(int resolution);
const std::vector<std::string>& class_table();
int class_id(const std::string& signature);  // throws InvalidArgument if unknown

/// Region map over the unit square: pixel (row, col) has {β} = (row + ½)/R
/// and {α} = (col + ½)/R; areas[c − 1] is the area of class c.
struct ConfigRegions {
  int resolution = 0;
  std::vector<std::uint8_t> ids;
  std::array<double, kConfigCount> areas{};

  Raster image() const;  // ids as grey levels, {β} increasing upwards
};
ConfigRegions config_regions(int resolution);

struct JointProbMatrix {
  int dk0 = 0;
  int dk1 = 0;
  std::array<std::array<double, kConfigCount>, kConfigCount> probs{};
  double resolution_error = 0.0;  // largest entry change against half resolution

  double total() const;
  std::array<double, kConfigCount> row_marginal() const;
  std::array<double, kConfigCount> column_marginal() const;
};

/// probs[a][b]: probability that P(k₀, k₁) is in class a and
/// P(k₀ + Δk₀, k₁ + Δk₁) in class b, the shift being (τ⁻¹Δk₁, τ⁻¹Δk₀) mod 1.
JointProbMatrix joint_probability(int dk0, int dk1, int resolution);

}  // namespace ql
