#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "quasilattice/elliptic.hpp"
#include "quasilattice/kac_ward.hpp"

namespace ql {

/// Sorted multiset of crossing rapidities. Only differences matter, so the
/// canonical form is shifted to start at zero.
struct RapidityMultiset {
  std::vector<double> entries;

  RapidityMultiset() = default;
  explicit RapidityMultiset(std::vector<double> values);

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  /// All entries equal, or all but one equal: the seeds of the recursion.
  bool is_base_case() const;
  RapidityMultiset without(std::initializer_list<double> values) const;
};

struct CorrelationOptions {
  int base_case_cap = 12;            // largest n in g_{2n} seeds
  double base_tolerance = 1e-9;      // target accuracy of each seed
  double ill_conditioning = 1e8;     // skip pairings with |sc| above this
  EmbeddingOptions embedding{};
};

/// Memoized g_{2n} (low regime) and g*_{2n} (its dual, the high regime at the
/// same k) at one elliptic modulus. Seeds come from extrapolated finite
/// lattices; everything else from the quadratic identities.
class CorrelationTable {
 public:
  explicit CorrelationTable(double k, CorrelationOptions opt = {});

  double k() const { return low_.k; }
  double quarter_period() const { return low_.quarter_period; }
  const EllipticParams& params(Regime r) const { return r == Regime::low_temperature ? low_ : high_; }

  /// g of the multiset in the given regime; dual = true asks for the other one.
  double g(Regime regime, const RapidityMultiset& rap, bool dual = false);
  double g(Regime regime, std::span<const double> rap, bool dual = false) {
    return g(regime, RapidityMultiset({rap.begin(), rap.end()}), dual);
  }
  /// Read-only lookup for the parallel phase; throws if not yet computed.
  double lookup(Regime regime, const RapidityMultiset& rap) const;
  bool contains(Regime regime, const RapidityMultiset& rap) const;

  /// Seed value straight from the finite-lattice extrapolation (memoized).
  Estimate base_case(Regime regime, const RapidityMultiset& rap);

  /// Left side of the quadratic identity for (u1, u2, u3, u4, rest...): the
  /// first identity when regime is low, the second when high.
  double identity_residual(Regime regime, double u1, double u2, double u3, double u4,
                           std::span<const double> rest);

  /// Largest error estimate among the seeds used so far.
  double max_base_error() const { return max_base_error_; }
  std::size_t size() const { return memo_[0].size() + memo_[1].size(); }

 private:
  using Key = std::vector<std::int64_t>;
  Key key(const RapidityMultiset& rap) const;
  double recurse(Regime regime, const RapidityMultiset& rap);

  EllipticParams low_;
  EllipticParams high_;
  CorrelationOptions opt_;
  std::map<Key, double> memo_[2];
  std::map<Key, Estimate> seeds_[2];
  double max_base_error_ = 0.0;
};

}  // namespace ql
