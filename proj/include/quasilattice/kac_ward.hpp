#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "quasilattice/elliptic.hpp"

namespace ql {

/// A planar Ising graph with a straight-line embedding. Only the geometry is
/// stored; edge weights are passed separately so one graph serves many
/// coupling sets.
struct PlanarGraph {
  std::vector<std::complex<double>> position;
  std::vector<std::array<int, 2>> edges;

  int add_vertex(std::complex<double> z);
  void add_edge(int a, int b) { edges.push_back({a, b}); }
};

/// log Σ_{even E} Π_{e∈E} t_e, the high-temperature-expansion sum over edge
/// sets with even degree everywhere. Kac–Ward: that sum squared equals
/// det(I − Λ), Λ being the non-backtracking transition matrix on directed
/// edges weighted by t and half the turning angle.
double log_even_subgraph_sum(const PlanarGraph& g, std::span<const double> t);

/// ⟨σ_a σ_b⟩ on the finite diagonal lattice of side `size` in which the two
/// spins sit in one column, separated by horizontal rapidity lines
/// `rapidities` (even count); every other line carries a background value.
/// Low regime goes through the dual lattice with free boundary, i.e. wired
/// boundary for the spins, which converges much faster than free.
double embedded_correlation(const EllipticParams& p, std::span<const double> rapidities,
                            int size);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int size = 0;  // largest lattice used
};

struct EmbeddingOptions {
  double tolerance = 1e-9;
  int margin = 32;    // first lattice side beyond the rapidity rows
  int step = 16;
  int max_size = 192;
};

/// embedded_correlation on growing lattices, extrapolated assuming geometric
/// convergence in the side length. Throws NotConverged past max_size.
Estimate extrapolated_correlation(const EllipticParams& p, std::span<const double> rapidities,
                                  const EmbeddingOptions& opt = {});

}  // namespace ql
