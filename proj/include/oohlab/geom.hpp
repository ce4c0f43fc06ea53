#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oohlab {

struct Location {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Location& o) const { return x == o.x && y == o.y; }
};

inline double distance(const Location& a, const Location& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Travel {
  double dist = 0.0;
  double hours = 0.0;
};

inline Travel travel(const Location& a, const Location& b, double speed) {
  const double d = distance(a, b);
  return {d, d / speed};
}

struct BoundingBox {
  Location min{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Location max{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};

  void expand(const Location& p) {
    min.x = std::min(min.x, p.x);
    min.y = std::min(min.y, p.y);
    max.x = std::max(max.x, p.x);
    max.y = std::max(max.y, p.y);
  }

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double diagonal() const { return std::hypot(width(), height()); }
  bool degenerate() const { return width() <= 0.0 || height() <= 0.0; }
};

inline BoundingBox bounding_box(const std::vector<Location>& pts) {
  BoundingBox b;
  for (const auto& p : pts) b.expand(p);
  return b;
}

}  // namespace oohlab
