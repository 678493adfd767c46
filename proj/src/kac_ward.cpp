#include "quasilattice/kac_ward.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <string>

#include "quasilattice/errors.hpp"
#include "quasilattice/ising.hpp"

namespace ql {

using cplx = std::complex<double>;

int PlanarGraph::add_vertex(cplx z) {
  position.push_back(z);
  return static_cast<int>(position.size()) - 1;
}

double log_even_subgraph_sum(const PlanarGraph& g, std::span<const double> t) {
  const int n_edges = static_cast<int>(g.edges.size());
  if (static_cast<int>(t.size()) != n_edges) throw InvalidArgument("one weight per edge expected");
  // Directed edge 2i runs edges[i][0] → edges[i][1], 2i+1 the reverse.
  std::vector<std::vector<int>> outgoing(g.position.size());
  for (int i = 0; i < n_edges; ++i) {
    outgoing[g.edges[i][0]].push_back(2 * i);
    outgoing[g.edges[i][1]].push_back(2 * i + 1);
  }
  auto tail = [&](int d) { return g.edges[d / 2][d % 2]; };
  auto head = [&](int d) { return g.edges[d / 2][1 - d % 2]; };

  const int dim = 2 * n_edges;
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(static_cast<std::size_t>(dim) * 4);
  for (int d = 0; d < dim; ++d) {
    entries.emplace_back(d, d, 1.0);
    const int h = head(d);
    const cplx in_dir = g.position[h] - g.position[tail(d)];
    for (int f : outgoing[h]) {
      if (f / 2 == d / 2) continue;
      const cplx out_dir = g.position[head(f)] - g.position[h];
      const double turn = std::arg(out_dir / in_dir);
      entries.emplace_back(d, f, -t[d / 2] * std::polar(1.0, 0.5 * turn));
    }
  }
  Eigen::SparseMatrix<cplx> m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) throw NumericallyIllConditioned("Kac-Ward matrix is singular");
  return 0.5 * lu.logAbsDeterminant().real();
}

namespace {

// Spins on the cells (x, y) of one checkerboard colour; rows y and y+1 are
// separated by a horizontal rapidity line, columns by vertical lines that all
// carry the same rapidity. Edges run from (x, y) up to (x ± 1, y + 1).
struct DiagonalLattice {
  PlanarGraph graph;
  std::vector<double> t;
  std::vector<int> index;  // cell → vertex id, −1 off the sublattice
  int lx = 0;
  int ly = 0;

  int vertex(int x, int y) const { return index[static_cast<std::size_t>(y) * lx + x]; }
  int edge_between(int a, int b) const {
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
      if (graph.edges[i][0] == a && graph.edges[i][1] == b) return static_cast<int>(i);
    }
    throw InvalidArgument("lattice has no such edge");
  }
};

// `parity` selects the colour x + y ≡ parity. `weight(row, up_right)` gives
// tanh of the coupling of an edge leaving row `row`.
template <class Weight>
DiagonalLattice build_lattice(int lx, int ly, int parity, Weight weight) {
  DiagonalLattice lat;
  lat.lx = lx;
  lat.ly = ly;
  lat.index.assign(static_cast<std::size_t>(lx) * ly, -1);
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      if ((x + y) % 2 == parity) {
        lat.index[static_cast<std::size_t>(y) * lx + x] = lat.graph.add_vertex({double(x), double(y)});
      }
    }
  }
  for (int y = 0; y + 1 < ly; ++y) {
    const double up_right = weight(y, true);
    const double up_left = weight(y, false);
    for (int x = 0; x < lx; ++x) {
      if ((x + y) % 2 != parity) continue;
      if (x + 1 < lx) {
        lat.graph.add_edge(lat.vertex(x, y), lat.vertex(x + 1, y + 1));
        lat.t.push_back(up_right);
      }
      if (x > 0) {
        lat.graph.add_edge(lat.vertex(x, y), lat.vertex(x - 1, y + 1));
        lat.t.push_back(up_left);
      }
    }
  }
  return lat;
}

}  // namespace

double embedded_correlation(const EllipticParams& p, std::span<const double> rapidities,
                            int size) {
  const int rows = static_cast<int>(rapidities.size());
  if (rows % 2 != 0) throw InvalidArgument("pair correlation needs an even number of lines");
  if (rows == 0) return 1.0;
  if (size < rows + 4) throw InvalidArgument("lattice too small for " + std::to_string(rows) + " lines");

  const auto [lo, hi] = std::minmax_element(rapidities.begin(), rapidities.end());
  const double kp = p.quarter_period;
  if (*hi - *lo >= kp) {
    throw InvalidArgument("rapidities must span less than K(k') for a ferromagnetic embedding");
  }
  // Vertical lines at v and background lines at w keep every u − v inside (0, K').
  const double w = 0.5 * (*lo + *hi);
  const double v = w - 0.5 * kp;

  const int lx = size;
  const int ly = size + rows;
  const int y0 = size / 2;
  const int x0 = (lx / 2) - ((lx / 2 + y0) % 2);  // on the even colour
  auto row_rapidity = [&](int y) { return (y >= y0 && y < y0 + rows) ? rapidities[y - y0] : w; };
  auto sinh2k = [&](int y, bool up_right) {
    return coupling_sinh(p, up_right ? CouplingKind::K_bar : CouplingKind::K, row_rapidity(y), v);
  };

  if (p.regime == Regime::high_temperature) {
    // Reroute the even-subgraph sum through the zigzag path a → b: edges on
    // the path get weight 1/t and the product of their t's factors out.
    auto lat = build_lattice(lx, ly, 0, [&](int y, bool ur) {
      return std::tanh(0.5 * std::asinh(sinh2k(y, ur)));
    });
    std::vector<double> t = lat.t;
    double prefactor = 1.0;
    int x = x0;
    for (int s = 0; s < rows; ++s) {
      const int nx = (s % 2 == 0) ? x + 1 : x - 1;
      const int e = lat.edge_between(lat.vertex(x, y0 + s), lat.vertex(nx, y0 + s + 1));
      prefactor *= lat.t[e];
      t[e] = 1.0 / lat.t[e];
      x = nx;
    }
    return prefactor * std::exp(log_even_subgraph_sum(lat.graph, t) -
                                log_even_subgraph_sum(lat.graph, lat.t));
  }

  // Low regime: the dual spins sit on the other colour with sinh 2K* = 1/sinh 2K;
  // a dual edge going up-right crosses a primal edge going up-left.
  auto lat = build_lattice(lx, ly, 1, [&](int y, bool ur) {
    return std::tanh(0.5 * std::asinh(1.0 / sinh2k(y, !ur)));
  });
  // ⟨σ_a σ_b⟩ is the disorder correlation of the dual: flip the sign of every
  // dual edge crossing the primal zigzag from a to b.
  std::vector<double> t = lat.t;
  int x = x0;
  for (int s = 0; s < rows; ++s) {
    const int y = y0 + s;
    const int nx = (s % 2 == 0) ? x + 1 : x - 1;
    const int e = lat.edge_between(lat.vertex(nx, y), lat.vertex(x, y + 1));
    t[e] = -lat.t[e];
    x = nx;
  }
  return std::exp(log_even_subgraph_sum(lat.graph, t) - log_even_subgraph_sum(lat.graph, lat.t));
}

Estimate extrapolated_correlation(const EllipticParams& p, std::span<const double> rapidities,
                                  const EmbeddingOptions& opt) {
  if (rapidities.empty()) return {1.0, 0.0, 0};
  const int rows = static_cast<int>(rapidities.size());
  std::vector<double> seq;
  int size = rows + opt.margin;
  double last_error = 0.0;
  for (; size <= opt.max_size + rows; size += opt.step) {
    seq.push_back(embedded_correlation(p, rapidities, size));
    const std::size_t n = seq.size();
    if (n < 3) continue;
    const double a = seq[n - 3];
    const double b = seq[n - 2];
    const double c = seq[n - 1];
    const double d1 = c - b;
    if (std::abs(d1) < 1e-14) return {c, std::abs(d1), size};
    const double r = d1 / (b - a);
    if (r > 0.0 && r < 0.8) {
      const double correction = d1 * r / (1.0 - r);
      // The correction itself bounds the remaining error once the ratio is
      // stable; doubling it keeps the estimate conservative.
      last_error = 2.0 * std::abs(correction * r);
      if (last_error < opt.tolerance) return {c + correction, last_error, size};
    } else {
      last_error = std::abs(d1);
    }
  }
  throw NotConverged("embedded correlation did not converge to " + std::to_string(opt.tolerance) +
                     "; last error estimate " + std::to_string(last_error));
}

}  // namespace ql
