#include "quasilattice/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quasilattice/errors.hpp"

namespace ql {

namespace {

int slot(Regime r) { return r == Regime::low_temperature ? 0 : 1; }
Regime other(Regime r) {
  return r == Regime::low_temperature ? Regime::high_temperature : Regime::low_temperature;
}

// Entries closer than this (in units of K') are treated as equal.
constexpr double kSame = 1e-12;

}  // namespace

RapidityMultiset::RapidityMultiset(std::vector<double> values) : entries(std::move(values)) {
  std::sort(entries.begin(), entries.end());
  if (!entries.empty()) {
    const double lo = entries.front();
    for (double& x : entries) x -= lo;
  }
}

bool RapidityMultiset::is_base_case() const {
  if (entries.size() <= 2) return true;
  // Sorted: all-but-one-equal means the odd one is first or last.
  const double eps = kSame * (1.0 + std::abs(entries.back()));
  const auto n = entries.size();
  const bool head_run = std::abs(entries[n - 1] - entries[1]) < eps;
  const bool tail_run = std::abs(entries[n - 2] - entries[0]) < eps;
  return head_run || tail_run;
}

RapidityMultiset RapidityMultiset::without(std::initializer_list<double> values) const {
  std::vector<double> rest = entries;
  for (double v : values) {
    auto it = std::find_if(rest.begin(), rest.end(), [&](double x) { return std::abs(x - v) < 1e-12; });
    if (it == rest.end()) throw InvalidArgument("value not in multiset");
    rest.erase(it);
  }
  return RapidityMultiset(std::move(rest));
}

CorrelationTable::CorrelationTable(double k, CorrelationOptions opt)
    : low_(EllipticParams::make(k, Regime::low_temperature)),
      high_(EllipticParams::make(k, Regime::high_temperature)),
      opt_(opt) {
  opt_.embedding.tolerance = opt_.base_tolerance;
}

CorrelationTable::Key CorrelationTable::key(const RapidityMultiset& rap) const {
  Key out;
  out.reserve(rap.size());
  for (double x : rap.entries) out.push_back(std::llround(x / low_.quarter_period * 1e11));
  return out;
}

Estimate CorrelationTable::base_case(Regime regime, const RapidityMultiset& rap) {
  if (rap.empty()) return {1.0, 0.0, 0};
  if (static_cast<int>(rap.size()) > 2 * opt_.base_case_cap) {
    throw BaseCaseUnavailable("seed with " + std::to_string(rap.size()) +
                              " lines exceeds the cap of 2n = " + std::to_string(2 * opt_.base_case_cap));
  }
  auto& seeds = seeds_[slot(regime)];
  const Key kk = key(rap);
  if (auto it = seeds.find(kk); it != seeds.end()) return it->second;
  const Estimate e = extrapolated_correlation(params(regime), rap.entries, opt_.embedding);
  max_base_error_ = std::max(max_base_error_, e.error);
  seeds.emplace(kk, e);
  return e;
}

double CorrelationTable::g(Regime regime, const RapidityMultiset& rap, bool dual) {
  if (rap.size() % 2 != 0) throw InvalidArgument("g needs an even number of rapidities");
  return recurse(dual ? other(regime) : regime, rap);
}

bool CorrelationTable::contains(Regime regime, const RapidityMultiset& rap) const {
  return rap.empty() || memo_[slot(regime)].contains(key(rap));
}

double CorrelationTable::lookup(Regime regime, const RapidityMultiset& rap) const {
  if (rap.empty()) return 1.0;
  const auto& memo = memo_[slot(regime)];
  auto it = memo.find(key(rap));
  if (it == memo.end()) throw BaseCaseUnavailable("multiset not in the correlation table");
  return it->second;
}

double CorrelationTable::recurse(Regime regime, const RapidityMultiset& rap) {
  if (rap.empty()) return 1.0;
  auto& memo = memo_[slot(regime)];
  const Key kk = key(rap);
  if (auto it = memo.find(kk); it != memo.end()) return it->second;

  double value = 0.0;
  if (rap.is_base_case()) {
    value = base_case(regime, rap).value;
  } else {
    // Distinct values with multiplicities; pick the pairing (a<b), (c<d)
    // with the largest min |sc| that the multiset can supply.
    std::vector<double> vals;
    std::vector<int> mult;
    for (double x : rap.entries) {
      if (vals.empty() || x - vals.back() > kSame * (1.0 + x)) {
        vals.push_back(x);
        mult.push_back(1);
      } else {
        ++mult.back();
      }
    }
    const double kp = low_.k_prime;
    const int m = static_cast<int>(vals.size());
    double best = -1.0;
    std::array<int, 4> pick{};
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const double s1 = sc(vals[b] - vals[a], kp);
        if (std::abs(s1) > opt_.ill_conditioning) continue;
        for (int c = a; c < m; ++c) {
          for (int d = c + 1; d < m; ++d) {
            if (c == a && d < b) continue;  // unordered pair of pairs
            std::vector<int> use(mult.begin(), mult.end());
            if (--use[a] < 0 || --use[b] < 0 || --use[c] < 0 || --use[d] < 0) continue;
            const double s2 = sc(vals[d] - vals[c], kp);
            if (std::abs(s2) > opt_.ill_conditioning) continue;
            const double score = std::min(std::abs(s1), std::abs(s2));
            if (score > best) {
              best = score;
              pick = {a, b, c, d};
            }
          }
        }
      }
    }
    if (best < 0.0) {
      throw NumericallyIllConditioned("no well-conditioned pairing for a multiset of size " +
                                      std::to_string(rap.size()));
    }
    const double u1 = vals[pick[0]], u2 = vals[pick[1]], u3 = vals[pick[2]], u4 = vals[pick[3]];
    const RapidityMultiset rest = rap.without({u1, u2, u3, u4});
    const Regime dual = other(regime);
    auto sub = [&](std::initializer_list<double> drop) { return rap.without(drop); };
    const double g12 = recurse(regime, sub({u3, u4}));
    const double g34 = recurse(regime, sub({u1, u2}));
    const double g0 = recurse(regime, rest);
    const double h13 = recurse(dual, sub({u2, u4}));
    const double h24 = recurse(dual, sub({u1, u3}));
    const double h14 = recurse(dual, sub({u2, u3}));
    const double h23 = recurse(dual, sub({u1, u4}));
    const double factor = (regime == Regime::low_temperature ? 1.0 : low_.k * low_.k) *
                          sc(u2 - u1, kp) * sc(u4 - u3, kp);
    if (std::abs(g0) < 1e-300) throw NumericallyIllConditioned("vanishing g of the spectator set");
    value = (g12 * g34 - (h13 * h24 - h14 * h23) / factor) / g0;
  }
  memo.emplace(kk, value);
  return value;
}

double CorrelationTable::identity_residual(Regime regime, double u1, double u2, double u3,
                                           double u4, std::span<const double> rest) {
  auto set = [&](std::initializer_list<double> xs) {
    std::vector<double> e(rest.begin(), rest.end());
    e.insert(e.end(), xs);
    return RapidityMultiset(std::move(e));
  };
  const Regime dual = other(regime);
  const double factor = (regime == Regime::low_temperature ? 1.0 : low_.k * low_.k) *
                        sc(u2 - u1, low_.k_prime) * sc(u4 - u3, low_.k_prime);
  const double first = recurse(regime, set({u1, u2, u3, u4})) * recurse(regime, set({})) -
                       recurse(regime, set({u1, u2})) * recurse(regime, set({u3, u4}));
  const double second = recurse(dual, set({u1, u3})) * recurse(dual, set({u2, u4})) -
                        recurse(dual, set({u1, u4})) * recurse(dual, set({u2, u3}));
  return factor * first + second;
}

}  // namespace ql
