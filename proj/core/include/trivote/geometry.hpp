#pragma once

#include <cmath>

namespace trivote {

/// A point in the Euclidean plane.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

inline double distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Lexicographic order on (x, y); the deterministic tie-break used throughout.
inline bool lex_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace trivote
