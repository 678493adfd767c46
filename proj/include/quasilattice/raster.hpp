#pragma once

#include <string>
#include <vector>

namespace ql {

/// Row-major image, row 0 at the top.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
};

struct PgmScale {
  double lo = 0.0;  // value mapped to 0
  double hi = 0.0;  // value mapped to 255
};

/// Binary PGM (P5), min–max normalized unless a scale is supplied.
std::string pgm_bytes(const Raster& r, const PgmScale& scale);
PgmScale min_max(const Raster& r);
PgmScale write_pgm(const std::string& path, const Raster& r);
void write_pgm(const std::string& path, const Raster& r, const PgmScale& scale);

}  // namespace ql
