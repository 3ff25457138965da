#include <doctest.h>

#include "avbench/errors.hpp"
#include "avbench/geometry.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace avbench;

TEST_CASE("squared distance to a segment") {
  CHECK(squared_distance_to_segment({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(squared_distance_to_segment({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(25.0));
  CHECK(squared_distance_to_segment({5, 0}, {0, 0}, {2, 0}) == doctest::Approx(9.0));
  gen::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const Point2 p{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const Point2 a{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const Point2 b{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    CHECK(squared_distance_to_segment(p, a, b) ==
          doctest::Approx(oracle::point_segment_dist2(p.x, p.y, a.x, a.y, b.x, b.y)).epsilon(1e-9));
  }
}

TEST_CASE("signed area and intersection predicates") {
  const std::vector<Point2> ccw = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  CHECK(signed_area2(ccw) == doctest::Approx(8.0));
  const std::vector<Point2> cw(ccw.rbegin(), ccw.rend());
  CHECK(signed_area2(cw) == doctest::Approx(-8.0));
  CHECK(on_segment({1, 1}, {0, 0}, {2, 2}));
  CHECK_FALSE(on_segment({3, 3}, {0, 0}, {2, 2}));
  CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}

TEST_CASE("region containment") {
  const Region square({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
  CHECK(square.contains({5, 5}));
  CHECK(square.contains({0, 5}));   // edge
  CHECK(square.contains({10, 10}));  // vertex
  CHECK_FALSE(square.contains({10.001, 5}));
  CHECK_FALSE(square.contains({-1, -1}));

  // Concave L shape.
  const Region ell({{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}});
  CHECK(ell.contains({0.5, 3}));
  CHECK(ell.contains({3, 0.5}));
  CHECK_FALSE(ell.contains({3, 3}));
}

TEST_CASE("degenerate polygons") {
  CHECK_THROWS_AS(Region({{0, 0}, {1, 0}}), DegeneratePolygon);
  CHECK_THROWS_AS(Region({{0, 0}, {1, 0}, {2, 0}}), DegeneratePolygon);
  CHECK_THROWS_AS(Region({{0, 0}, {2, 2}, {2, 0}, {0, 2}}), DegeneratePolygon);  // bow tie
}

TEST_CASE("region files") {
  const auto r = load_region("# box\nvertex,0,0\nvertex,4,0\nvertex,4,3\n");
  CHECK(r.vertices().size() == 3);
  try {
    load_region("vertex,0,0\nvertex,1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line_no() == 2);
  }
}
