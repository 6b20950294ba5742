#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "starc/errors.hpp"
#include "starc/expression.hpp"

namespace starc {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// A coordinate patch: four named coordinates, a box domain, and the
// sampling policy for residual sweeps.
struct Chart {
  std::array<std::string, 4> coord_names{{"t", "x", "y", "z"}};
  std::array<Interval, 4> domain{{{0, 1}, {0, 1}, {0, 1}, {0, 1}}};
  int sample_count = 64;
  std::uint64_t seed = 0;

  void validate() const;

  bool contains(const Point& p, double margin = 0.0) const;
  void require_interior(const Point& p, double margin) const;

  // Deterministic low-discrepancy sweep points: a seed-rotated Halton
  // sequence scaled into the domain shrunk by `margin` on every side.
  std::vector<Point> sample_points(double margin) const;
};

}  // namespace starc
