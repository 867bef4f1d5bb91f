#ifndef MMC_GEOMETRY_HPP
#define MMC_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace mmc {

using PointId = std::int32_t;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative slack used when resolving ball membership on sampled data.
// Grid distances land within a few ulp of their nominal value; without the
// slack, "closed ball of radius k*h" would drop boundary samples at random.
constexpr double kBallSnap = 1e-9;

inline bool in_closed_ball(double d, double r) { return d <= r * (1.0 + kBallSnap); }
inline bool in_open_ball(double d, double r) { return d < r * (1.0 - kBallSnap); }

inline double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double euclid(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(sq_dist(a, b));
}

/// Axis-aligned box, used as the region descriptor of a sampled domain.
struct Bounds {
  std::vector<double> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(std::span<const double> x) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }

  // Distance from x to the complement of the box (<= 0 outside).
  double dist_to_complement(std::span<const double> x) const {
    double best = kInf;
    for (int i = 0; i < dim(); ++i) {
      best = std::min(best, x[i] - lo[i]);
      best = std::min(best, hi[i] - x[i]);
    }
    return best;
  }

  double diameter() const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
      const double d = hi[i] - lo[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
};

}  // namespace mmc

#endif
