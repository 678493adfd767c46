#pragma once

#include <array>
#include <vector>

namespace ql {

struct Bond {
  int a = 0;
  int b = 0;
  double coupling = 0.0;  // βJ
};

/// A finite Ising graph, H = −Σ J σ_a σ_b − B Σ σ.
struct SpinGraph {
  int sites = 0;
  std::vector<Bond> bonds;
};

struct EnumerationResult {
  double log_z = 0.0;
  double free_energy = 0.0;   // −log Z / sites
  double pair = 0.0;          // ⟨σ_a σ_b⟩
  double magnetization = 0.0; // ⟨σ_a⟩
};

inline constexpr int kMaxEnumerationSites = 24;

/// Brute-force sum over all 2^sites states. Throws TooLarge above 24 sites.
EnumerationResult oracle_enumerate(const SpinGraph& g, int a, int b, double field);

}  // namespace ql
