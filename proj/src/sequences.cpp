#include "quasilattice/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quasilattice/errors.hpp"

namespace ql {

double golden_ratio() { return 0.5 * (1.0 + std::sqrt(5.0)); }

std::vector<std::uint64_t> fibonacci_numbers(int count) {
  if (count < 1) throw InvalidArgument("count must be at least 1");
  if (count > 93) throw TooLarge("F_n overflows 64 bits beyond n = 93");
  std::vector<std::uint64_t> f(static_cast<std::size_t>(count), 1);
  for (int i = 2; i < count; ++i) f[i] = f[i - 1] + f[i - 2];
  return f;
}

double fibonacci_closed_form(int n) {
  const double tau = golden_ratio();
  return (std::pow(tau, n) - std::pow(1.0 - tau, n)) / std::sqrt(5.0);
}

std::string fibonacci_word(int n) {
  if (n < 1) throw InvalidArgument("word index must be at least 1");
  if (n > 40) throw TooLarge("Fibonacci word beyond n = 40 is over 10^8 letters");
  std::string prev = "A";
  std::string cur = "B";
  if (n == 1) return prev;
  for (int i = 2; i < n; ++i) {
    std::string next = cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<long long> beatty_sequence(const BeattySpec& spec, long long n_from, long long n_to) {
  if (n_from > n_to) throw InvalidArgument("n_from must not exceed n_to");
  auto round_fn = [&](double x) {
    return static_cast<long long>(spec.variant == BeattyVariant::floor ? std::floor(x) : std::ceil(x));
  };
  std::vector<long long> out;
  out.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  for (long long n = n_from; n <= n_to; ++n) {
    const double a = static_cast<double>(n) * spec.theta + spec.gamma_shift;
    const double b = static_cast<double>(n + 1) * spec.theta + spec.gamma_shift;
    out.push_back(round_fn(b) - round_fn(a));
  }
  return out;
}

double canonical_window(double slope) {
  const double norm = std::hypot(1.0, slope);
  return (1.0 + std::abs(slope)) / norm;
}

constexpr double kEdge = 1e-12;

std::vector<double> cut_and_project_1d(double slope, double window_width, int range, double offset) {
  if (!(window_width > 0.0)) throw InvalidArgument("window width must be positive");
  const double norm = std::hypot(1.0, slope);
  const double c = 1.0 / norm;      // cos θ
  const double s = slope / norm;    // sin θ
  const double reach = std::max(std::abs(c), std::abs(s));
  const double limit = (range - window_width - std::abs(offset)) / reach;
  std::vector<double> out;
  for (int m = -range; m <= range; ++m) {
    for (int n = -range; n <= range; ++n) {
      const double perp = -m * s + n * c;
      // Half-open window; the tolerance keeps lattice points that sit exactly on
      // an edge (the canonical window has two) on a consistent side.
      if (perp < offset - kEdge || perp >= offset + window_width - kEdge) continue;
      const double par = m * c + n * s;
      if (std::abs(par) <= limit) out.push_back(par);
    }
  }
  if (out.empty()) throw EmptyWindow("no lattice point falls inside the window");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> distinct_gaps(const std::vector<double>& points, double tol) {
  std::vector<double> gaps;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double g = points[i] - points[i - 1];
    if (std::none_of(gaps.begin(), gaps.end(), [&](double x) { return std::abs(x - g) < tol; })) {
      gaps.push_back(g);
    }
  }
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

std::string gap_word(const std::vector<double>& points, double tol) {
  const auto gaps = distinct_gaps(points, tol);
  if (gaps.size() != 2) {
    throw InvalidArgument("gap word needs exactly two gap lengths, found " + std::to_string(gaps.size()));
  }
  std::string w;
  for (std::size_t i = 1; i < points.size(); ++i) {
    w += std::abs(points[i] - points[i - 1] - gaps[0]) < tol ? 'A' : 'B';
  }
  return w;
}

KroneckerStats kronecker_stats(double x, std::uint64_t count, int bins) {
  if (bins < 1 || count < 1) throw InvalidArgument("need count ≥ 1 and bins ≥ 1");
  KroneckerStats st;
  st.histogram.assign(static_cast<std::size_t>(bins), 0);
  // n·x is formed directly (not accumulated) so rounding does not drift.
  for (std::uint64_t n = 1; n <= count; ++n) {
    const double y = static_cast<double>(n) * x;
    double f = y - std::floor(y);
    if (f >= 1.0) f = 0.0;
    auto b = static_cast<std::size_t>(f * bins);
    if (b >= st.histogram.size()) b = st.histogram.size() - 1;
    ++st.histogram[b];
  }
  for (auto h : st.histogram) {
    st.max_deviation = std::max(st.max_deviation,
                                std::abs(static_cast<double>(h) / static_cast<double>(count) - 1.0 / bins));
  }
  return st;
}

}  // namespace ql
