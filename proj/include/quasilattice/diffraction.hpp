#pragma once

#include <complex>
#include <vector>

#include "quasilattice/raster.hpp"

namespace ql {

/// `count` pinholes on the unit circle at angles 2πj/count, j = 1..count,
/// imaged on [−d, d]² with a raster × raster grid over the closed square.
struct PinholeSpec {
  int count = 5;
  double d = 50.0;
  int raster = 400;

  double coordinate(int i) const;  // −d + 2d·i/(raster − 1)
};

std::complex<double> amplitude(const PinholeSpec& spec, double x, double y);
double intensity(const PinholeSpec& spec, double x, double y);  // |A|²

/// −log |A|² (floored at 1e-300), so darker grey = brighter light. Row 0 is
/// y = +d, column 0 is x = −d.
Raster intensity_map(const PinholeSpec& spec);
Raster intensity_map_serial(const PinholeSpec& spec);

struct SymmetryReport {
  double rotation_error = 0.0;   // max |I(Rp) − I(p)| / count² over the raster, R = 2π/count
  double inversion_error = 0.0;  // same for p → −p
  double centre_intensity = 0.0; // |A|² at the raster node(s) nearest the origin
  double max_intensity = 0.0;    // raster maximum of |A|²
  double max_x = 0.0;
  double max_y = 0.0;
  bool centre_is_max = false;
};
SymmetryReport check_symmetry(const PinholeSpec& spec);

struct Repetition {
  double x = 0.0;
  double y = 0.0;
  double correlation = 0.0;  // Pearson, intensity on the disk vs the central disk
};

struct RepetitionScan {
  double disk_radius = 5.0;
  double min_distance = 10.0;  // from the origin, so disks do not overlap the centre one
  double centre_step = 0.5;
  double sample_step = 0.25;
  double threshold = 0.9;
};

/// Local maxima (at least one disk radius apart) of the correlation between
/// the intensity on a displaced disk and on the central disk, above threshold,
/// best first. Disks stay inside the window.
std::vector<Repetition> near_repetitions(const PinholeSpec& spec, const RepetitionScan& scan = {});

}  // namespace ql
