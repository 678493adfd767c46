#include "quasilattice/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "quasilattice/errors.hpp"

namespace ql {

EnumerationResult oracle_enumerate(const SpinGraph& g, int a, int b, double field) {
  if (g.sites < 1) throw InvalidArgument("graph has no sites");
  if (g.sites > kMaxEnumerationSites) {
    throw TooLarge(std::to_string(g.sites) + " sites exceed the enumeration limit of " +
                   std::to_string(kMaxEnumerationSites));
  }
  if (a < 0 || b < 0 || a >= g.sites || b >= g.sites) throw InvalidArgument("site out of range");

  // Energies are shifted by their upper bound so the weights stay ≤ 1.
  double shift = std::abs(field) * g.sites;
  for (const auto& bond : g.bonds) shift += std::abs(bond.coupling);

  const std::int64_t states = std::int64_t{1} << g.sites;
  double z = 0.0, zab = 0.0, za = 0.0;
#pragma omp parallel for reduction(+ : z, zab, za) schedule(static)
  for (std::int64_t s = 0; s < states; ++s) {
    auto spin = [s](int i) { return ((s >> i) & 1) ? -1.0 : 1.0; };
    double e = 0.0;
    for (const auto& bond : g.bonds) e += bond.coupling * spin(bond.a) * spin(bond.b);
    if (field != 0.0) {
      double m = 0.0;
      for (int i = 0; i < g.sites; ++i) m += spin(i);
      e += field * m;
    }
    const double w = std::exp(e - shift);
    z += w;
    zab += w * spin(a) * spin(b);
    za += w * spin(a);
  }
  EnumerationResult r;
  r.log_z = std::log(z) + shift;
  r.free_energy = -r.log_z / g.sites;
  r.pair = zab / z;
  r.magnetization = za / z;
  return r;
}

}  // namespace ql
