#include "quasilattice/environment.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <tuple>
#include <string>

#include "quasilattice/errors.hpp"
#include "quasilattice/sequences.hpp"

namespace ql {

namespace {

double inv_tau() { return golden_ratio() - 1.0; }

double frac(double x) { return x - std::floor(x); }

// value = c + cs·s + ct·t on the unit square of P, (s, t) = (1, 1) at z_c.
struct Affine {
  double c = 0.0;
  double cs = 0.0;
  double ct = 0.0;
  double at(double s, double t) const { return c + cs * s + ct * t; }
};

using Point = std::array<double, 2>;

// Keeps the part of a convex polygon where sign·(f − bound) > 0.
std::vector<Point> clip(const std::vector<Point>& poly, const Affine& f, double bound, double sign) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const double dp = sign * (f.at(p[0], p[1]) - bound);
    const double dq = sign * (f.at(q[0], q[1]) - bound);
    if (dp > 0) out.push_back(p);
    if ((dp > 0) != (dq > 0)) {
      const double r = dp / (dp - dq);
      out.push_back({p[0] + r * (q[0] - p[0]), p[1] + r * (q[1] - p[1])});
    }
  }
  return out;
}

double area(const std::vector<Point>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(a);
}

struct Endpoint {
  double perimeter;  // side index + fraction along it
  int family;        // 2, 3 or 4
  long long line;
};

constexpr double kCornerTolerance = 1e-9;

// f[0..2] are grids 2, 3, 4; target[j] is the reference component, so the
// reference mesh is where target − 1 < f < target for all three.
EnvConfig analyze(const std::array<Affine, 3>& f, const std::array<long long, 3>& target) {
  static constexpr Point corners[4] = {{1, 1}, {0, 1}, {0, 0}, {1, 0}};
  for (const Point& c : corners) {
    for (int j = 0; j < 3; ++j) {
      const double v = f[j].at(c[0], c[1]);
      if (std::abs(v - std::round(v)) < kCornerTolerance) {
        throw IrregularPentagrid("a line of grid " + std::to_string(j + 2) +
                                 " passes through a corner of the parallelogram");
      }
    }
  }

  EnvConfig cfg;
  std::vector<Endpoint> ends;
  for (int side = 0; side < 4; ++side) {
    const Point& p = corners[side];
    const Point& q = corners[(side + 1) % 4];
    std::vector<std::pair<double, int>> here;
    for (int j = 0; j < 3; ++j) {
      const double a = f[j].at(p[0], p[1]);
      const double b = f[j].at(q[0], q[1]);
      const auto lo = static_cast<long long>(std::floor(std::min(a, b))) + 1;
      const auto hi = static_cast<long long>(std::floor(std::max(a, b)));
      for (long long n = lo; n <= hi; ++n) {
        const double r = (n - a) / (b - a);
        here.emplace_back(r, j + 2);
        ends.push_back({side + r, j + 2, n});
      }
    }
    std::sort(here.begin(), here.end());
    cfg.signature += 'C';
    for (std::size_t i = 0; i < here.size(); ++i) {
      if (i > 0 && here[i].first - here[i - 1].first < 1e-12) {
        throw IrregularPentagrid("two lines meet on the boundary of the parallelogram");
      }
      cfg.signature += static_cast<char>('0' + here[i].second);
    }
  }

  // Chords of a convex cell cross inside iff their endpoints interleave.
  struct Chord {
    double a, b;
  };
  std::vector<Chord> chords;
  std::sort(ends.begin(), ends.end(), [](const Endpoint& x, const Endpoint& y) {
    return std::tie(x.family, x.line, x.perimeter) < std::tie(y.family, y.line, y.perimeter);
  });
  for (std::size_t i = 0; i + 1 < ends.size(); i += 2) {
    if (ends[i].family != ends[i + 1].family || ends[i].line != ends[i + 1].line) {
      throw IrregularPentagrid("a grid line touches the parallelogram at a single point");
    }
    chords.push_back({ends[i].perimeter, ends[i + 1].perimeter});
  }
  int crossings = 0;
  for (std::size_t i = 0; i < chords.size(); ++i) {
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      const bool inside = (chords[j].a > chords[i].a && chords[j].a < chords[i].b);
      const bool inside2 = (chords[j].b > chords[i].a && chords[j].b < chords[i].b);
      if (inside != inside2) ++crossings;
    }
  }
  cfg.mesh_count = 1 + static_cast<int>(chords.size()) + crossings;

  std::vector<Point> poly(std::begin(corners), std::end(corners));
  for (int j = 0; j < 3 && !poly.empty(); ++j) {
    poly = clip(poly, f[j], static_cast<double>(target[j] - 1), 1.0);
    poly = clip(poly, f[j], static_cast<double>(target[j]), -1.0);
  }
  cfg.reference_inside = poly.size() >= 3 && area(poly) > 1e-14;
  return cfg;
}

EnvConfig analyze_fractional(double a, double b) {
  // {α} + {β} = 1 puts a grid-3 line through z_c; that never happens on a
  // real pentagrid, but rasters with rational pixel centres hit it. Such
  // points go to the even side.
  if (std::abs(a + b - 1.0) < kCornerTolerance) b = 1.0 - a - 2.0 * kCornerTolerance;
  const double it = inv_tau();
  const std::array<Affine, 3> f{{{a + 1.0 - it, -1.0, it},
                                 {-(a + b) + 2.0 * it, -it, -it},
                                 {b + 1.0 - it, it, -1.0}}};
  return analyze(f, {1, 0, 1});
}

// Raster samples may land on other measure-zero degeneracies too (shifted
// rasters in particular); step off them by a few tolerances.
EnvConfig analyze_pixel(double a, double b) {
  for (int attempt = 0;; ++attempt) {
    try {
      return analyze_fractional(a, b);
    } catch (const IrregularPentagrid&) {
      if (attempt == 3) throw;
      b = b > 0.5 ? b - 3.0 * kCornerTolerance : b + 3.0 * kCornerTolerance;
    }
  }
}

// z with grid-0 value a0 and grid-1 value a1.
cplx z_from(const Pentagrid& g, double a0, double a1) {
  const cplx e0 = g.direction(0);
  const cplx e1 = g.direction(1);
  const double p = a0 - g.offsets[0];
  const double q = a1 - g.offsets[1];
  const double det = e0.real() * e1.imag() - e0.imag() * e1.real();
  return {(p * e1.imag() - q * e0.imag()) / det, (e0.real() * q - e1.real() * p) / det};
}

}  // namespace

std::array<double, 2> alpha_beta(const Pentagrid& grid, long long k0, long long k1) {
  if (grid.order() != 5) throw InvalidArgument("α, β are defined for the pentagrid only");
  const auto& g = grid.offsets;
  const double it = inv_tau();
  return {it * (static_cast<double>(k1) - g[1]) + g[0] + g[2],
          it * (static_cast<double>(k0) - g[0]) + g[1] + g[4]};
}

Parallelogram parallelogram(const Pentagrid& grid, int k0, int k1) {
  Parallelogram p;
  p.k0 = k0;
  p.k1 = k1;
  const auto [a, b] = alpha_beta(grid, k0, k1);
  p.alpha = a;
  p.beta = b;
  const int ca = static_cast<int>(std::ceil(a));
  const int cb = static_cast<int>(std::ceil(b));
  const int fa = static_cast<int>(std::floor(a));
  const int fb = static_cast<int>(std::floor(b));
  p.reference.k = {k0, k1, ca - k0, -fa - fb, cb - k1};
  const cplx zc = z_from(grid, k0, k1);
  p.corner.k = {k0, k1, 0, 0, 0};
  for (int j = 2; j < 5; ++j) p.corner.k[j] = static_cast<int>(std::ceil(grid.grid_value(j, zc)));
  return p;
}

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity corner_parity(double alpha, double beta) {
  return frac(alpha) + frac(beta) < 1.0 ? Parity::even : Parity::odd;
}

EnvConfig classify(const Pentagrid& grid, int k0, int k1) {
  if (grid.order() != 5) throw InvalidArgument("configurations are defined for the pentagrid only");
  const Parallelogram par = parallelogram(grid, k0, k1);
  // Each g_j is affine in (s, t); sample it at three corners of P.
  const cplx z00 = z_from(grid, k0 - 1.0, k1 - 1.0);
  const cplx z10 = z_from(grid, k0, k1 - 1.0);
  const cplx z01 = z_from(grid, k0 - 1.0, k1);
  std::array<Affine, 3> f;
  std::array<long long, 3> target{};
  for (int j = 2; j < 5; ++j) {
    const double v00 = grid.grid_value(j, z00);
    f[j - 2] = {v00, grid.grid_value(j, z10) - v00, grid.grid_value(j, z01) - v00};
    target[j - 2] = par.reference.k[j];
  }
  EnvConfig cfg = analyze(f, target);
  cfg.id = class_id(cfg.signature);
  return cfg;
}

EnvConfig classify_fractional(double frac_alpha, double frac_beta) {
  EnvConfig cfg = analyze_fractional(frac_alpha, frac_beta);
  cfg.id = class_id(cfg.signature);
  return cfg;
}

std::vector<std::string> signature_scan(int resolution) {
  if (resolution < 1) throw InvalidArgument("resolution must be positive");
  std::vector<std::string> seen;
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      const auto cfg = analyze_pixel((col + 0.5) / resolution, (row + 0.5) / resolution);
      if (std::find(seen.begin(), seen.end(), cfg.signature) == seen.end()) seen.push_back(cfg.signature);
    }
  }
  return seen;
}

const std::vector<std::string>& class_table() {
  static const std::vector<std::string> table = {
#include "env_classes.inc"
  };
  return table;
}

int class_id(const std::string& signature) {
  const auto& t = class_table();
  const auto it = std::find(t.begin(), t.end(), signature);
  if (it == t.end()) throw InvalidArgument("configuration " + signature + " is not in the class table");
  return static_cast<int>(it - t.begin()) + 1;
}

Raster ConfigRegions::image() const {
  Raster r{resolution, resolution, std::vector<double>(ids.size())};
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      r.at(resolution - 1 - row, col) = ids[static_cast<std::size_t>(row) * resolution + col];
    }
  }
  return r;
}

ConfigRegions config_regions(int resolution) {
  if (resolution < 1) throw InvalidArgument("resolution must be positive");
  ConfigRegions reg;
  reg.resolution = resolution;
  reg.ids.resize(static_cast<std::size_t>(resolution) * resolution);
#pragma omp parallel for schedule(static)
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      reg.ids[static_cast<std::size_t>(row) * resolution + col] = static_cast<std::uint8_t>(
          class_id(analyze_pixel((col + 0.5) / resolution, (row + 0.5) / resolution).signature));
    }
  }
  std::array<std::size_t, kConfigCount> counts{};
  for (auto id : reg.ids) ++counts[id - 1];
  const double pixel = 1.0 / (static_cast<double>(resolution) * resolution);
  for (int c = 0; c < kConfigCount; ++c) reg.areas[c] = counts[c] * pixel;
  return reg;
}

double JointProbMatrix::total() const {
  double s = 0.0;
  for (const auto& row : probs) {
    for (double p : row) s += p;
  }
  return s;
}

std::array<double, kConfigCount> JointProbMatrix::row_marginal() const {
  std::array<double, kConfigCount> m{};
  for (int a = 0; a < kConfigCount; ++a) {
    for (int b = 0; b < kConfigCount; ++b) m[a] += probs[a][b];
  }
  return m;
}

std::array<double, kConfigCount> JointProbMatrix::column_marginal() const {
  std::array<double, kConfigCount> m{};
  for (int a = 0; a < kConfigCount; ++a) {
    for (int b = 0; b < kConfigCount; ++b) m[b] += probs[a][b];
  }
  return m;
}

namespace {

using Matrix = std::array<std::array<double, kConfigCount>, kConfigCount>;

Matrix joint_raster(double shift_a, double shift_b, int resolution) {
  // Integer counts keep the result independent of the thread count.
  using Counts = std::array<std::array<long long, kConfigCount>, kConfigCount>;
  Counts total{};
  std::mutex merge;
#pragma omp parallel
  {
    Counts local{};
#pragma omp for schedule(static)
    for (int row = 0; row < resolution; ++row) {
      const double b = (row + 0.5) / resolution;
      for (int col = 0; col < resolution; ++col) {
        const double a = (col + 0.5) / resolution;
        const int first = class_id(analyze_pixel(a, b).signature);
        const int second = class_id(analyze_pixel(frac(a + shift_a), frac(b + shift_b)).signature);
        ++local[first - 1][second - 1];
      }
    }
    std::lock_guard lock(merge);
    for (int i = 0; i < kConfigCount; ++i) {
      for (int j = 0; j < kConfigCount; ++j) total[i][j] += local[i][j];
    }
  }
  const double pixel = 1.0 / (static_cast<double>(resolution) * resolution);
  Matrix out{};
  for (int i = 0; i < kConfigCount; ++i) {
    for (int j = 0; j < kConfigCount; ++j) out[i][j] = total[i][j] * pixel;
  }
  return out;
}

}  // namespace

JointProbMatrix joint_probability(int dk0, int dk1, int resolution) {
  if (resolution < 2) throw InvalidArgument("resolution must be at least 2");
  JointProbMatrix m;
  m.dk0 = dk0;
  m.dk1 = dk1;
  const double it = inv_tau();
  const double shift_a = frac(it * dk1);
  const double shift_b = frac(it * dk0);
  m.probs = joint_raster(shift_a, shift_b, resolution);
  const Matrix coarse = joint_raster(shift_a, shift_b, resolution / 2);
  for (int i = 0; i < kConfigCount; ++i) {
    for (int j = 0; j < kConfigCount; ++j) {
      m.resolution_error = std::max(m.resolution_error, std::abs(m.probs[i][j] - coarse[i][j]));
    }
  }
  return m;
}

}  // namespace ql
