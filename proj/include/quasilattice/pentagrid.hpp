#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace ql {

using cplx = std::complex<double>;

/// n families of unit-spaced parallel lines Re(z ζ^{-j}) + γ_j = k. For odd n
/// ζ = e^{2πi/n}; for even n ζ = e^{iπ/n}, so that the n directions stay
/// distinct modulo π (n = 4 gives the Ammann–Beenker grid).
struct Pentagrid {
  std::vector<double> offsets;
  double tolerance = 1e-9;

  static Pentagrid penrose();  // γ = (0.17, 0.23, −0.37, 0.11, −0.14)
  static Pentagrid penrose(const std::array<double, 5>& gamma);
  static Pentagrid multigrid(std::vector<double> offsets);

  int order() const { return static_cast<int>(offsets.size()); }
  cplx direction(int j) const;
  /// Re(z ζ^{-j}) + γ_j; lines of family j sit where this is an integer.
  double grid_value(int j, cplx z) const;
};

struct IntegerVector {
  std::vector<int> k;

  int index() const;
  bool even() const;  // index 2 or 4 for the pentagrid
  auto operator<=>(const IntegerVector&) const = default;
};

struct IntegerVectorHash {
  std::size_t operator()(const IntegerVector& v) const noexcept;
};

/// K_j(z) = ⌈Re(z ζ^{-j}) + γ_j⌉. Throws OnGridLine within tolerance of a line.
IntegerVector mesh_vector(const Pentagrid& grid, cplx z);

/// Σ_j K_j ζ^j with ζ of the n-fold grid (n = size of kvec).
cplx vertex_position(const IntegerVector& kvec);
cplx grid_root(int n, int j);

enum class Shape { fat, skinny, other };
const char* to_string(Shape s);

struct TilingVertex {
  IntegerVector kvec;
  cplx position;
  bool even() const { return kvec.even(); }
};

/// Rhombus dual to the crossing of line k_r of family r with line k_s of
/// family s. Corners are ordered (0,0), (1,0), (0,1), (1,1) in (ε_r, ε_s).
struct Rhombus {
  int r = 0;
  int s = 0;
  int k_r = 0;
  int k_s = 0;
  Shape shape = Shape::other;
  int angle_units = 0;  // smallest interior angle in units of π/n
  cplx intersection;
  std::array<int, 4> corners{};
};

struct DualRhombus {
  Rhombus rhombus;
  std::array<IntegerVector, 4> kvecs;
  std::array<cplx, 4> positions;
};

DualRhombus dualize_intersection(const Pentagrid& grid, int r, int k_r, int s, int k_s);

struct TilingPatch {
  Pentagrid grid;
  double radius = 0.0;
  std::vector<TilingVertex> vertices;
  std::vector<Rhombus> rhombi;

  std::size_t count(Shape s) const;
  /// Tiling-plane radius inside which every vertex of the infinite tiling is
  /// present (f(z) ≈ (n/2)·z plus a bounded offset).
  double complete_radius() const;
  /// Vertex pairs joined by rhombus sides.
  std::vector<std::array<int, 2>> edges() const;
};

/// All rhombi whose defining intersection satisfies |z₀| ≤ radius, vertices
/// deduplicated by integer vector. Throws IrregularPentagrid.
TilingPatch generate_patch(const Pentagrid& grid, double radius);
TilingPatch multigrid_patch(const std::vector<double>& offsets, double radius);

struct Segment {
  cplx a;
  cplx b;
};

/// Ammann bar pieces of a pentagrid rhombus given its corner positions and
/// corner vectors (corner order as in Rhombus::corners).
std::vector<Segment> ammann_decorate(const Rhombus& r, const TilingPatch& patch);
std::vector<Segment> ammann_decorate(const DualRhombus& r);

std::string patch_to_json(const TilingPatch& patch);
std::string patch_to_svg(const TilingPatch& patch, bool ammann);

}  // namespace ql
