#pragma once

#include <cmath>
#include <vector>

namespace atomroute {

/// Point in normalized layout coordinates ([0,1]^2 for valid layouts).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool insideUnitSquare(const Point& p) {
  return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

using PointList = std::vector<Point>;

/// Segment intersection where touching endpoints and collinear overlap both
/// count as intersecting.
bool segmentsIntersect(const Point& p1, const Point& p2, const Point& q1,
                       const Point& q2);

} // namespace atomroute
