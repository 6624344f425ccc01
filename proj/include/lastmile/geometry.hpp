#pragma once

#include <algorithm>
#include <cmath>

namespace lastmile {

/// Planar location in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double euclidean_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Extra distance a vehicle travelling from `a` to `b` incurs by stopping
/// at `d` on the way: d(a,d) + d(d,b) - d(a,b). Clamped at zero so that
/// rounding on collinear points never yields a negative surcharge.
inline double detour_extra_distance(const Point& a, const Point& b,
                                    const Point& d) {
  const double extra = euclidean_distance(a, d) + euclidean_distance(d, b) -
                       euclidean_distance(a, b);
  return std::max(0.0, extra);
}

}  // namespace lastmile
