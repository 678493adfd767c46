#include "quasilattice/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "quasilattice/errors.hpp"

namespace ql {

namespace {

constexpr double kFloor = 1e-300;

void validate(const PinholeSpec& s) {
  if (s.count < 2) throw InvalidArgument("need at least two pinholes");
  if (s.raster < 2) throw InvalidArgument("raster must be at least 2");
  if (!(s.d > 0.0)) throw InvalidArgument("window half-width must be positive");
}

double log_intensity(const PinholeSpec& s, double x, double y) {
  return -std::log(std::max(intensity(s, x, y), kFloor));
}

}  // namespace

double PinholeSpec::coordinate(int i) const { return -d + 2.0 * d * i / (raster - 1); }

std::complex<double> amplitude(const PinholeSpec& spec, double x, double y) {
  std::complex<double> a = 0.0;
  for (int j = 1; j <= spec.count; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / spec.count;
    a += std::polar(1.0, x * std::cos(theta) + y * std::sin(theta));
  }
  return a;
}

double intensity(const PinholeSpec& spec, double x, double y) { return std::norm(amplitude(spec, x, y)); }

Raster intensity_map(const PinholeSpec& spec) {
  validate(spec);
  const int g = spec.raster;
  Raster r{g, g, std::vector<double>(static_cast<std::size_t>(g) * g)};
#pragma omp parallel for schedule(static)
  for (int row = 0; row < g; ++row) {
    const double y = spec.coordinate(g - 1 - row);
    for (int col = 0; col < g; ++col) r.at(row, col) = log_intensity(spec, spec.coordinate(col), y);
  }
  return r;
}

Raster intensity_map_serial(const PinholeSpec& spec) {
  validate(spec);
  const int g = spec.raster;
  Raster r{g, g, std::vector<double>(static_cast<std::size_t>(g) * g)};
  for (int row = 0; row < g; ++row) {
    for (int col = 0; col < g; ++col) {
      r.at(row, col) = log_intensity(spec, spec.coordinate(col), spec.coordinate(g - 1 - row));
    }
  }
  return r;
}

SymmetryReport check_symmetry(const PinholeSpec& spec) {
  validate(spec);
  SymmetryReport rep;
  const int g = spec.raster;
  const double norm = static_cast<double>(spec.count) * spec.count;
  const double c = std::cos(2.0 * std::numbers::pi / spec.count);
  const double s = std::sin(2.0 * std::numbers::pi / spec.count);
  double nearest = std::numeric_limits<double>::max();
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const double x = spec.coordinate(j);
      const double y = spec.coordinate(i);
      const double v = intensity(spec, x, y);
      rep.rotation_error = std::max(rep.rotation_error, std::abs(intensity(spec, c * x - s * y, s * x + c * y) - v) / norm);
      rep.inversion_error = std::max(rep.inversion_error, std::abs(intensity(spec, -x, -y) - v) / norm);
      if (v > rep.max_intensity) {
        rep.max_intensity = v;
        rep.max_x = x;
        rep.max_y = y;
      }
      const double r = std::hypot(x, y);
      if (r < nearest - 1e-12) {
        nearest = r;
        rep.centre_intensity = v;
      } else if (std::abs(r - nearest) <= 1e-12) {
        rep.centre_intensity = std::max(rep.centre_intensity, v);
      }
    }
  }
  rep.centre_is_max = rep.centre_intensity >= rep.max_intensity - 1e-12 * norm;
  return rep;
}

std::vector<Repetition> near_repetitions(const PinholeSpec& spec, const RepetitionScan& scan) {
  validate(spec);
  const int n = spec.count;
  std::vector<double> ex(n), ey(n);
  for (int j = 0; j < n; ++j) {
    ex[j] = std::cos(2.0 * std::numbers::pi * (j + 1) / n);
    ey[j] = std::sin(2.0 * std::numbers::pi * (j + 1) / n);
  }
  // A(c + p) = Σ_j e^{i c·e_j} E_j(p): the per-point phases are shared by every centre.
  const double r = scan.disk_radius;
  std::vector<std::complex<double>> phases;
  std::vector<double> tmpl;
  const int steps = static_cast<int>(std::floor(r / scan.sample_step));
  for (int a = -steps; a <= steps; ++a) {
    for (int b = -steps; b <= steps; ++b) {
      const double u = a * scan.sample_step;
      const double v = b * scan.sample_step;
      if (u * u + v * v > r * r) continue;
      for (int j = 0; j < n; ++j) phases.push_back(std::polar(1.0, u * ex[j] + v * ey[j]));
      tmpl.push_back(intensity(spec, u, v));
    }
  }
  const std::size_t m = tmpl.size();
  double tmean = 0.0;
  for (double t : tmpl) tmean += t;
  tmean /= static_cast<double>(m);
  double tvar = 0.0;
  for (double& t : tmpl) {
    t -= tmean;
    tvar += t * t;
  }

  const double reach = spec.d - r;
  const int cn = static_cast<int>(std::floor(reach / scan.centre_step));
  const int side = 2 * cn + 1;
  std::vector<double> corr(static_cast<std::size_t>(side) * side, -2.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < side; ++i) {
    std::vector<std::complex<double>> shift(n);
    std::vector<double> vals(m);
    for (int j = 0; j < side; ++j) {
      const double cx = (j - cn) * scan.centre_step;
      const double cy = (i - cn) * scan.centre_step;
      if (std::hypot(cx, cy) < scan.min_distance) continue;
      for (int q = 0; q < n; ++q) shift[q] = std::polar(1.0, cx * ex[q] + cy * ey[q]);
      double mean = 0.0;
      for (std::size_t p = 0; p < m; ++p) {
        std::complex<double> a = 0.0;
        for (int q = 0; q < n; ++q) a += shift[q] * phases[p * n + q];
        vals[p] = std::norm(a);
        mean += vals[p];
      }
      mean /= static_cast<double>(m);
      double cov = 0.0, var = 0.0;
      for (std::size_t p = 0; p < m; ++p) {
        const double v = vals[p] - mean;
        cov += v * tmpl[p];
        var += v * v;
      }
      corr[static_cast<std::size_t>(i) * side + j] = cov / std::sqrt(var * tvar);
    }
  }

  std::vector<Repetition> found;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double c = corr[static_cast<std::size_t>(i) * side + j];
      if (c > scan.threshold) found.push_back({(j - cn) * scan.centre_step, (i - cn) * scan.centre_step, c});
    }
  }
  std::sort(found.begin(), found.end(), [](const Repetition& a, const Repetition& b) {
    return std::tie(b.correlation, a.x, a.y) < std::tie(a.correlation, b.x, b.y);
  });
  std::vector<Repetition> peaks;
  for (const auto& f : found) {
    const bool close = std::any_of(peaks.begin(), peaks.end(), [&](const Repetition& p) {
      return std::hypot(p.x - f.x, p.y - f.y) < r;
    });
    if (!close) peaks.push_back(f);
  }
  return peaks;
}

}  // namespace ql
