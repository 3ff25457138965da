#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace avbench {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double squared_distance_to_segment(Point2 p, Point2 a, Point2 b);

/// Twice the signed area (positive for counter-clockwise rings).
double signed_area2(std::span<const Point2> ring);

bool on_segment(Point2 p, Point2 a, Point2 b);

/// Segments ab and cd share at least one point.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// Simple polygon, implicitly closed, at least 3 vertices, non-zero area,
/// no self-intersections. Construction throws DegeneratePolygon.
class Region {
 public:
  explicit Region(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }

  /// Crossing-number test; points on the boundary count as inside.
  bool contains(Point2 p) const;

 private:
  std::vector<Point2> vertices_;
};

/// Reads `vertex,x,y` lines (`#` comments allowed).
Region load_region(std::istream& in);
Region load_region(std::string_view text);

}  // namespace avbench
