#include "quasilattice/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "quasilattice/errors.hpp"

namespace ql {

std::vector<int> crossing_indices(const IntegerVector& delta) {
  if (delta.k.size() != 5) throw InvalidArgument("crossing rapidities need a pentagrid vector");
  std::vector<int> m;
  for (int j = 0; j < 5; ++j) {
    const int d = delta.k[j];
    const int idx = (((d > 0 ? 5 - 2 * j : -2 * j) % 10) + 10) % 10;
    m.insert(m.end(), static_cast<std::size_t>(std::abs(d)), idx);
  }
  if (m.empty()) return m;
  // Rotate so the values sit on one arc starting at 0 (only differences
  // matter, modulo 10 units = 2K').
  std::vector<int> distinct = m;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  int start = distinct.front();
  int widest = 10 - (distinct.back() - distinct.front());
  for (std::size_t i = 1; i < distinct.size(); ++i) {
    if (distinct[i] - distinct[i - 1] > widest) {
      widest = distinct[i] - distinct[i - 1];
      start = distinct[i];
    }
  }
  for (int& x : m) x = ((x - start) % 10 + 10) % 10;
  std::sort(m.begin(), m.end());
  if (m.back() > 4) {
    throw InvalidArgument("crossing rapidities spread over " + std::to_string(m.back()) +
                          " units, more than the 4 a pentagrid allows");
  }
  return m;
}

RapidityMultiset crossing_rapidities(const RapidityAssignment& assign, const TilingVertex& a,
                                     const TilingVertex& b) {
  if (a.even() != b.even()) throw MixedParity("the two vertices lie on different sublattices");
  if (a.kvec.k.size() != b.kvec.k.size()) throw InvalidArgument("vectors of different length");
  IntegerVector delta;
  delta.k.resize(a.kvec.k.size());
  for (std::size_t j = 0; j < delta.k.size(); ++j) delta.k[j] = b.kvec.k[j] - a.kvec.k[j];
  std::vector<double> rap;
  for (int m : crossing_indices(delta)) rap.push_back(assign.rapidity(m));
  return RapidityMultiset(std::move(rap));
}

double connected_correlation(CorrelationTable& table, Regime regime, const RapidityMultiset& rap) {
  const double g = table.g(regime, rap);
  const double m = order_parameter(table.params(regime));
  return g - m * m;
}

TilingPatch patch_covering(const Pentagrid& grid, double radius) {
  // Inverse of TilingPatch::complete_radius.
  const int n = grid.order();
  double offset = n;
  for (double g : grid.offsets) offset += std::abs(g);
  return generate_patch(grid, (radius + offset) / (0.5 * n) + 2.5);
}

SpinSet select_spins(const TilingPatch& patch, double radius) {
  if (radius > patch.complete_radius() + 1e-12) {
    throw TruncationExceedsPatch("spin radius " + std::to_string(radius) + " exceeds the complete radius " +
                                 std::to_string(patch.complete_radius()) + " of the patch");
  }
  SpinSet s;
  s.radius = radius;
  for (const auto& v : patch.vertices) {
    if (v.even() && std::abs(v.position) <= radius) s.spins.push_back(v);
  }
  return s;
}

std::vector<PairClass> pair_classes(const SpinSet& s, double cutoff) {
  std::map<std::array<int, 5>, PairClass> classes;
  for (const auto& a : s.spins) {
    for (const auto& b : s.spins) {
      const auto d = b.position - a.position;
      if (std::abs(d) > cutoff) continue;
      std::array<int, 5> key{};
      for (int j = 0; j < 5; ++j) key[j] = b.kvec.k[j] - a.kvec.k[j];
      auto [it, fresh] = classes.try_emplace(key);
      if (fresh) {
        it->second.delta = key;
        it->second.displacement = d;
      }
      ++it->second.count;
    }
  }
  std::vector<PairClass> out;
  out.reserve(classes.size());
  for (auto& [key, c] : classes) out.push_back(c);
  return out;
}

double taper(double r, double truncation) {
  if (r >= truncation) return 0.0;
  const double x = r / truncation;
  const double a = 1.0 - x;
  return a * a * a * a * (4.0 * x + 1.0);
}

namespace {

void check_options(const SpinSet& s, const ChiOptions& opt) {
  if (s.spins.empty()) throw InvalidArgument("no spins selected");
  if (opt.grid.n < 1) throw InvalidArgument("q grid needs at least one node");
  if (!(opt.truncation > 0.0)) throw InvalidArgument("truncation must be positive");
  if (opt.truncation > s.radius) {
    throw TruncationExceedsPatch("truncation " + std::to_string(opt.truncation) +
                                 " exceeds the spin radius " + std::to_string(s.radius));
  }
}

ChiMap empty_map(const SpinSet& s, const QGrid& grid) {
  ChiMap m;
  m.grid = grid;
  m.values.assign(static_cast<std::size_t>(grid.n) * grid.n, 0.0);
  m.spin_radius = s.radius;
  m.spins = s.spins.size();
  return m;
}

}  // namespace

ChiMap chi_map(const SpinSet& s, CorrelationTable& table, Regime regime, const ChiOptions& opt) {
  check_options(s, opt);
  ChiMap out = empty_map(s, opt.grid);
  out.truncation = opt.truncation;
  const auto classes = pair_classes(s, opt.truncation);
  const RapidityAssignment assign{table.quarter_period()};
  const double n_spins = static_cast<double>(s.spins.size());

  // Engine values first (serial, fills the memo), then a read-only sweep.
  std::vector<double> dx, dy, w;
  const std::size_t before = table.size();
  for (const auto& c : classes) {
    IntegerVector delta;
    delta.k.assign(c.delta.begin(), c.delta.end());
    RapidityMultiset rap;
    for (int m : crossing_indices(delta)) rap.entries.push_back(assign.rapidity(m));
    rap = RapidityMultiset(std::move(rap.entries));
    const double conn = connected_correlation(table, regime, rap);
    const double r = std::abs(c.displacement);
    if (r > opt.truncation - 1.0) out.truncation_error += c.count * std::abs(conn) / n_spins;
    const double weight = c.count * taper(r, opt.truncation) * conn / n_spins;
    if (weight == 0.0) continue;
    dx.push_back(c.displacement.real());
    dy.push_back(c.displacement.imag());
    w.push_back(weight);
  }
  out.classes = classes.size();
  out.multisets = table.size() - before;

  const int n = opt.grid.n;
  const std::size_t terms = w.size();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < n; ++iy) {
    const double qy = opt.grid.node(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double qx = opt.grid.node(ix);
      double sum = 0.0;
      for (std::size_t c = 0; c < terms; ++c) sum += w[c] * std::cos(qx * dx[c] + qy * dy[c]);
      out.values[static_cast<std::size_t>(iy) * n + ix] = sum;
    }
  }
  return out;
}

ChiMap chi_map_naive(const SpinSet& s, CorrelationTable& table, Regime regime,
                     const ChiOptions& opt) {
  check_options(s, opt);
  ChiMap out = empty_map(s, opt.grid);
  out.truncation = opt.truncation;
  const RapidityAssignment assign{table.quarter_period()};
  const double n_spins = static_cast<double>(s.spins.size());
  struct Pair {
    double dx, dy, weight;
  };
  std::vector<Pair> pairs;
  for (const auto& a : s.spins) {
    for (const auto& b : s.spins) {
      const auto d = b.position - a.position;
      const double r = std::abs(d);
      if (r > opt.truncation) continue;
      const double conn = connected_correlation(table, regime, crossing_rapidities(assign, a, b));
      if (r > opt.truncation - 1.0) out.truncation_error += std::abs(conn) / n_spins;
      pairs.push_back({d.real(), d.imag(), taper(r, opt.truncation) * conn});
    }
  }
  out.classes = pairs.size();
  const int n = opt.grid.n;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      double sum = 0.0;
      for (const auto& p : pairs) sum += p.weight * std::cos(opt.grid.node(ix) * p.dx + opt.grid.node(iy) * p.dy);
      out.values[static_cast<std::size_t>(iy) * n + ix] = sum / n_spins;
    }
  }
  return out;
}

namespace {

double coherent_sum(const SpinSet& s, double qx, double qy) {
  double re = 0.0;
  double im = 0.0;
  for (const auto& v : s.spins) {
    const double phase = qx * v.position.real() + qy * v.position.imag();
    re += std::cos(phase);
    im += std::sin(phase);
  }
  return re * re + im * im;
}

}  // namespace

ChiMap bragg_map(const SpinSet& s, const EllipticParams& p, const QGrid& grid) {
  ChiMap out = empty_map(s, grid);
  const double m2 = std::pow(order_parameter(p), 2);
  if (m2 == 0.0 || s.spins.empty()) return out;
  const double scale = m2 / static_cast<double>(s.spins.size());
  const int n = grid.n;
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      out.values[static_cast<std::size_t>(iy) * n + ix] = scale * coherent_sum(s, grid.node(ix), grid.node(iy));
    }
  }
  return out;
}

ChiMap bragg_map_serial(const SpinSet& s, const EllipticParams& p, const QGrid& grid) {
  ChiMap out = empty_map(s, grid);
  const double m2 = std::pow(order_parameter(p), 2);
  if (m2 == 0.0 || s.spins.empty()) return out;
  const double scale = m2 / static_cast<double>(s.spins.size());
  for (int iy = 0; iy < grid.n; ++iy) {
    for (int ix = 0; ix < grid.n; ++ix) {
      out.values[static_cast<std::size_t>(iy) * grid.n + ix] = scale * coherent_sum(s, grid.node(ix), grid.node(iy));
    }
  }
  return out;
}

}  // namespace ql
