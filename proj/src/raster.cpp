#include "quasilattice/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "quasilattice/errors.hpp"

namespace ql {

PgmScale min_max(const Raster& r) {
  if (r.values.empty()) return {};
  const auto [lo, hi] = std::minmax_element(r.values.begin(), r.values.end());
  return {*lo, *hi};
}

std::string pgm_bytes(const Raster& r, const PgmScale& scale) {
  if (r.width < 1 || r.height < 1 || r.values.size() != static_cast<std::size_t>(r.width) * r.height) {
    throw InvalidArgument("raster size does not match its dimensions");
  }
  std::string out = "P5\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n255\n";
  const double span = scale.hi - scale.lo;
  for (double v : r.values) {
    const double x = span > 0.0 ? (v - scale.lo) / span : 0.0;
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0))));
  }
  return out;
}

void write_pgm(const std::string& path, const Raster& r, const PgmScale& scale) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << pgm_bytes(r, scale);
}

PgmScale write_pgm(const std::string& path, const Raster& r) {
  const auto scale = min_max(r);
  write_pgm(path, r, scale);
  return scale;
}

}  // namespace ql
