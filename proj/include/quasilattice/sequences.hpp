#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ql {

/// Golden ratio from √5.
double golden_ratio();

/// F_1 = F_2 = 1, F_{n+1} = F_n + F_{n-1}; first `count` terms.
std::vector<std::uint64_t> fibonacci_numbers(int count);
/// Closed form (τⁿ − (1−τ)ⁿ)/√5.
double fibonacci_closed_form(int n);

/// word(1) = "A", word(2) = "B", word(n+1) = word(n) + word(n−1).
std::string fibonacci_word(int n);

enum class BeattyVariant { floor, ceil };

struct BeattySpec {
  double theta = 0.0;
  double gamma_shift = 0.0;
  BeattyVariant variant = BeattyVariant::floor;
};

/// Terms ⌊(n+1)θ+γ⌋ − ⌊nθ+γ⌋ (or with ⌈·⌉) for n_from ≤ n ≤ n_to.
std::vector<long long> beatty_sequence(const BeattySpec& spec, long long n_from, long long n_to);

/// Perpendicular width of the unit square seen along the line of the given
/// slope: the window that yields exactly two gap lengths.
double canonical_window(double slope);

/// Parallel coordinates of all Z² points whose perpendicular coordinate lies
/// in [offset, offset + width), for |m|, |n| ≤ range, cut to the interval on
/// which the list is complete. Sorted.
std::vector<double> cut_and_project_1d(double slope, double window_width, int range,
                                       double offset = 0.0);

/// Distinct consecutive differences (within tol), ascending.
std::vector<double> distinct_gaps(const std::vector<double>& points, double tol = 1e-9);
/// Gaps as letters: the shorter of two gap values is 'A', the longer 'B'.
std::string gap_word(const std::vector<double>& points, double tol = 1e-9);

struct KroneckerStats {
  std::vector<std::uint64_t> histogram;
  double max_deviation = 0.0;  // max |count/total − 1/bins|
};

/// Histogram of {n x}, n = 1..count, over `bins` equal bins of [0, 1).
KroneckerStats kronecker_stats(double x, std::uint64_t count, int bins);

}  // namespace ql
