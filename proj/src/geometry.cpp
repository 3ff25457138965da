#include "avbench/geometry.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "avbench/errors.hpp"
#include "avbench/text_format.hpp"

namespace avbench {

namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double squared_distance_to_segment(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double wx = p.x - a.x;
  const double wy = p.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double u = 0.0;
  if (len2 > 0.0) { u = std::clamp((wx * dx + wy * dy) / len2, 0.0, 1.0); }
  const double ex = wx - u * dx;
  const double ey = wy - u * dy;
  return ex * ex + ey * ey;
}

double signed_area2(std::span<const Point2> ring) {
  double area = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % ring.size()];
    area += a.x * b.y - b.x * a.y;
  }
  return area;
}

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return cross(a, b, p) == 0.0 && std::min(a.x, b.x) <= p.x &&
         p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) { return true; }
  return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) ||
         (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

Region::Region(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) { throw DegeneratePolygon("needs at least 3 vertices"); }
  if (signed_area2(vertices_) == 0.0) { throw DegeneratePolygon("zero area"); }
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = vertices_[i];
    const auto b = vertices_[(i + 1) % n];
    if (a == b) { throw DegeneratePolygon("repeated vertex"); }
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1)) { continue; }
      if (segments_intersect(a, b, vertices_[j], vertices_[(j + 1) % n])) {
        throw DegeneratePolygon("self-intersecting");
      }
    }
  }
}

bool Region::contains(Point2 p) const {
  const std::size_t n = vertices_.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[j];
    if (on_segment(p, a, b)) { return true; }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) { inside = !inside; }
    }
  }
  return inside;
}

Region load_region(std::istream& in) {
  std::vector<Point2> vertices;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_ignorable(line)) { continue; }
    const auto fields = text::split_fields(line);
    if (fields.size() != 3 || fields[0] != "vertex") {
      throw DegeneratePolygon("expected 'vertex,x,y'", line_no);
    }
    const auto x = text::parse_double(fields[1]);
    const auto y = text::parse_double(fields[2]);
    if (!x || !y) { throw DegeneratePolygon("bad coordinate", line_no); }
    vertices.push_back({*x, *y});
  }
  return Region(std::move(vertices));
}

Region load_region(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_region(in);
}

}  // namespace avbench
