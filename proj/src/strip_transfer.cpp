#include "quasilattice/strip_transfer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "quasilattice/errors.hpp"
#include "quasilattice/ising.hpp"

namespace ql {

namespace {

std::size_t rotate_left(std::size_t x, int n) {
  const std::size_t mask = (std::size_t{1} << n) - 1;
  return ((x << 1) | (x >> (n - 1))) & mask;
}

void normalize(std::vector<double>& v) {
  const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  for (double& x : v) x /= norm;
}

}  // namespace

StripTransfer::StripTransfer(const EllipticParams& params, int width, double vertical,
                             double background, double field)
    : params_(params), width_(width), vertical_(vertical), background_(background), field_(field) {
  if (width < 2 || width > 26) {
    throw TooLarge("strip width must be in [2, 26], got " + std::to_string(width));
  }
}

std::pair<double, double> StripTransfer::row_couplings(double u) const {
  return {coupling(params_, CouplingKind::K_bar, u, vertical_).value,
          coupling(params_, CouplingKind::K, u, vertical_).value};
}

// New spin m couples to old spin m with ka and to old spin m+1 with kb.
// Old spins are replaced one at a time, with new spin N-1 parked in an extra
// bit until the ring closes.
void StripTransfer::step_parity0(std::span<const double> in, std::span<double> out, double ka,
                                 double kb) const {
  const int n = width_;
  const std::size_t dim = dimension();
  std::vector<double> buf(2 * dim);
  std::copy(in.begin(), in.end(), buf.begin());
  std::copy(in.begin(), in.end(), buf.begin() + static_cast<std::ptrdiff_t>(dim));

  const double ea = std::exp(ka);
  const double ia = std::exp(-ka);
  const double eb = std::exp(kb);
  const double ib = std::exp(-kb);

  auto eliminate = [&](int bit, int control) {
    const std::size_t step = std::size_t{1} << bit;
    const std::size_t total = 2 * dim;
    const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>(total / (2 * step));
#pragma omp parallel for schedule(static) if (total > (1u << 16))
    for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
      const std::size_t base = static_cast<std::size_t>(blk) * 2 * step;
      for (std::size_t lo = 0; lo < step; ++lo) {
        const std::size_t x0 = base + lo;
        const std::size_t x1 = x0 + step;
        const bool c = (x0 >> control) & 1u;
        const double bp = c ? ib : eb;
        const double bm = c ? eb : ib;
        const double v0 = buf[x0] * bp;
        const double v1 = buf[x1] * bm;
        buf[x0] = ea * v0 + ia * v1;
        buf[x1] = ia * v0 + ea * v1;
      }
    }
  };

  eliminate(0, n);
  for (int m = 1; m < n - 1; ++m) eliminate(m, m - 1);

  // Last old spin couples to the parked new spin (ka) and to new spin n-2 (kb).
  const int last = n - 1;
  const std::size_t low_mask = (std::size_t{1} << last) - 1;
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static) if (dim > (1u << 15))
  for (std::ptrdiff_t yi = 0; yi < count; ++yi) {
    const std::size_t y = static_cast<std::size_t>(yi);
    const std::size_t e = (y >> last) & 1u;
    const std::size_t rest = y & low_mask;
    const bool c = (rest >> (n - 2)) & 1u;
    const double v_plus = buf[rest | (e << n)];
    const double v_minus = buf[rest | (std::size_t{1} << last) | (e << n)];
    const double a_plus = e ? ia : ea;
    const double a_minus = e ? ea : ia;
    const double b_plus = c ? ib : eb;
    const double b_minus = c ? eb : ib;
    out[y] = a_plus * b_plus * v_plus + a_minus * b_minus * v_minus;
  }
}

void StripTransfer::apply_field(std::span<double> v) const {
  if (field_ == 0.0) return;
  std::vector<double> factor(static_cast<std::size_t>(width_) + 1);
  for (int down = 0; down <= width_; ++down) factor[down] = std::exp(field_ * (width_ - 2 * down));
  for (std::size_t x = 0; x < v.size(); ++x) v[x] *= factor[std::popcount(x)];
}

void StripTransfer::apply(std::span<const double> in, std::span<double> out, double ka,
                          double kb, int parity, bool transpose) const {
  // Parity-1 rows are parity-0 rows rotated by one site; the transpose of a
  // step is the opposite-parity step with the two couplings exchanged.
  const bool rotate = (parity == 1) != transpose;
  if (transpose) std::swap(ka, kb);
  if (!rotate) {
    step_parity0(in, out, ka, kb);
    return;
  }
  std::vector<double> rotated(dimension());
  for (std::size_t x = 0; x < dimension(); ++x) rotated[rotate_left(x, width_)] = in[x];
  step_parity0(rotated, out, ka, kb);
}

void StripTransfer::half_step(std::span<const double> in, std::span<double> out, double u,
                              int parity, bool transpose) const {
  const auto [ka, kb] = row_couplings(u);
  apply(in, out, ka, kb, parity, transpose);
}

std::vector<double> StripTransfer::dominant(bool left) const {
  auto& cache = left ? left_ : right_;
  if (!cache.empty()) return cache;
  const auto [ka, kb] = row_couplings(background_);
  std::vector<double> v(dimension(), 1.0);
  std::vector<double> mid(dimension());
  std::vector<double> next(dimension());
  std::vector<double> fv(dimension());
  normalize(v);
  constexpr int kMaxIterations = 20000;
  for (int it = 0; it < kMaxIterations; ++it) {
    // Two rows: M = F T₁ F T₀ with F the field factor on the new row.
    if (left) {
      std::copy(v.begin(), v.end(), fv.begin());
      apply_field(fv);
      apply(fv, mid, ka, kb, 1, true);
      apply_field(mid);
      apply(mid, next, ka, kb, 0, true);
    } else {
      apply(v, mid, ka, kb, 0, false);
      apply_field(mid);
      apply(mid, next, ka, kb, 1, false);
      apply_field(next);
    }
    normalize(next);
    double diff = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(next[i] - v[i]));
    v.swap(next);
    if (diff < 1e-15) {
      cache = v;
      return v;
    }
  }
  throw NotConverged("power iteration for the strip eigenvector did not converge");
}

double StripTransfer::magnetization() const {
  const auto right = dominant(false);
  const auto left = dominant(true);
  double n = 0.0;
  double d = 0.0;
  for (std::size_t x = 0; x < right.size(); ++x) {
    const double w = left[x] * right[x];
    n += (x & 1u) ? -w : w;
    d += w;
  }
  return n / d;
}

double StripTransfer::pair_correlation(std::span<const double> rapidities) const {
  if (field_ != 0.0) throw InvalidArgument("pair correlation is defined here for zero field only");
  if (rapidities.size() % 2 != 0) {
    throw InvalidArgument("pair correlation needs an even number of crossing lines");
  }
  const auto right = dominant(false);
  const auto left = dominant(true);
  std::vector<double> num = right;
  std::vector<double> den = right;
  for (std::size_t x = 0; x < num.size(); ++x) {
    if (x & 1u) num[x] = -num[x];
  }
  std::vector<double> tmp(dimension());
  int parity = 0;
  for (double u : rapidities) {
    half_step(num, tmp, u, parity);
    num.swap(tmp);
    half_step(den, tmp, u, parity);
    den.swap(tmp);
    parity ^= 1;
  }
  double n = 0.0;
  double d = 0.0;
  for (std::size_t x = 0; x < num.size(); ++x) {
    n += left[x] * ((x & 1u) ? -num[x] : num[x]);
    d += left[x] * den[x];
  }
  return n / d;
}

double strip_fit(double k, std::span<const int> widths, std::span<const double> values) {
  const auto m = static_cast<Eigen::Index>(widths.size());
  if (m < 4 || values.size() != widths.size()) {
    throw InvalidArgument("the width fit needs at least four strips");
  }
  Eigen::MatrixXd a(m, 4);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n = widths[i];
    const double e = std::pow(k, n) / std::sqrt(n);
    a(i, 0) = 1.0;
    a(i, 1) = e;
    a(i, 2) = e / n;
    a(i, 3) = e / (n * n);
    b(i) = values[i];
  }
  // The correction columns are tiny; rescale them so the QR sees O(1) columns.
  for (int j = 1; j < 4; ++j) a.col(j) /= a.col(j).cwiseAbs().maxCoeff();
  return a.colPivHouseholderQr().solve(b)(0);
}

StripOracle::StripOracle(const EllipticParams& p, int min_width, int max_width) : params_(p) {
  const double vertical = -0.1 * p.quarter_period;
  for (int n = min_width; n <= max_width; n += 2) {
    widths_.push_back(n);
    strips_.emplace_back(p, n, vertical, vertical + 0.5 * p.quarter_period);
  }
}

StripEstimate StripOracle::correlation(std::span<const double> rapidities) const {
  const double kk = params_.quarter_period;
  for (double u : rapidities) {
    if (u < -1e-12 || u > 0.8 * kk + 1e-12) {
      throw InvalidArgument("strip oracle rapidities must lie within [0, 0.8 K(k')]");
    }
  }
  StripEstimate est;
  for (const auto& st : strips_) est.raw.push_back(st.pair_correlation(rapidities));
  est.value = strip_fit(params_.k, widths_, est.raw);
  est.error = std::abs(est.value - strip_fit(params_.k, std::span(widths_).subspan(1),
                                             std::span<const double>(est.raw).subspan(1)));
  return est;
}

}  // namespace ql
