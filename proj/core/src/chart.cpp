#include "starc/chart.hpp"

#include <cmath>

namespace starc {

namespace {

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  for (std::uint64_t i = index; i > 0; i /= base) {
    f /= base;
    r += f * static_cast<double>(i % base);
  }
  return r;
}

// splitmix64, used for the Cranley-Patterson rotations.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

void Chart::validate() const {
  for (int i = 0; i < 4; ++i)
    if (!(domain[i].lo < domain[i].hi))
      throw SchemaError("chart.domain[" + std::to_string(i) + "]", "empty interval");
  if (sample_count < 1) throw SchemaError("chart.samples", "must be >= 1");
}

bool Chart::contains(const Point& p, double margin) const {
  for (int i = 0; i < 4; ++i)
    if (p[i] < domain[i].lo + margin || p[i] > domain[i].hi - margin) return false;
  return true;
}

void Chart::require_interior(const Point& p, double margin) const {
  if (!contains(p, margin))
    throw DomainError("point outside chart interior (margin " + std::to_string(margin) + ")");
}

std::vector<Point> Chart::sample_points(double margin) const {
  static constexpr int bases[4] = {2, 3, 5, 7};
  double rot[4];
  for (int d = 0; d < 4; ++d)
    rot[d] = static_cast<double>(mix(seed + 0x1000 * d) >> 11) * 0x1.0p-53;

  std::vector<Point> pts;
  pts.reserve(sample_count);
  for (int k = 0; k < sample_count; ++k) {
    Point p;
    for (int d = 0; d < 4; ++d) {
      double u = halton(static_cast<std::uint64_t>(k) + 1, bases[d]) + rot[d];
      u -= std::floor(u);
      const double lo = domain[d].lo + margin;
      const double hi = domain[d].hi - margin;
      p[d] = lo + u * (hi - lo);
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace starc
