#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace curveset;

TEST_CASE("euclidean basics") {
  CHECK(euclidean(Point{0, 0}, Point{3, 4}) == 5.0);
  const Point p{1.5, -2.0, 7.25};
  CHECK(euclidean(p, p) == 0.0);
  CHECK_THROWS_AS(euclidean(Point{0, 0}, Point{0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("euclidean matches an independent scalar recomputation") {
  // Frozen 5-d pair; expected value recomputed digit by digit offline.
  const Point p{0.1, -2.3, 3.7, 0.05, 1.9};
  const Point q{4.2, 1.1, -0.6, 2.75, -3.3};
  CHECK_THAT(euclidean(p, q),
             Catch::Matchers::WithinAbs(9.010549372818508, 1e-12));
}

TEST_CASE("euclidean triangle inequality on sampled triples") {
  std::mt19937_64 g(401);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + uniform_index(g, 5);
    const Point a = oracles::random_point(g, dim, -10, 10);
    const Point b = oracles::random_point(g, dim, -10, 10);
    const Point c = oracles::random_point(g, dim, -10, 10);
    CHECK(euclidean(a, c) <= euclidean(a, b) + euclidean(b, c) + 1e-12);
  }
}

TEST_CASE("point_segment_distance basics") {
  CHECK(point_segment_distance(Point{0, 1}, Point{-1, 0}, Point{1, 0}) == 1.0);
  CHECK(point_segment_distance(Point{2, 0}, Point{0, 0}, Point{1, 0}) == 1.0);
  // coincident endpoints degenerate to point distance
  CHECK(point_segment_distance(Point{3, 4}, Point{0, 0}, Point{0, 0}) == 5.0);
}

TEST_CASE("point_segment_distance matches a dense grid search") {
  std::mt19937_64 g(402);
  const Point x = oracles::random_point(g, 2, -5, 5);
  const Point a = oracles::random_point(g, 2, -5, 5);
  const Point b = oracles::random_point(g, 2, -5, 5);
  const double grid = oracles::grid_point_segment(x, a, b, 1000000);
  CHECK_THAT(point_segment_distance(x, a, b),
             Catch::Matchers::WithinAbs(grid, 1e-6));
}

TEST_CASE("point_segment_distance never exceeds either endpoint distance") {
  std::mt19937_64 g(403);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + uniform_index(g, 4);
    const Point x = oracles::random_point(g, dim, -5, 5);
    const Point a = oracles::random_point(g, dim, -5, 5);
    const Point b = oracles::random_point(g, dim, -5, 5);
    CHECK(point_segment_distance(x, a, b) <=
          std::min(euclidean(x, a), euclidean(x, b)) + 1e-12);
  }
}

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS_AS(Point(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(Point({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(Point({std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Curve(std::vector<Point>{}), std::invalid_argument);
  CHECK_THROWS_AS(Curve({Point{0, 0}, Point{0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet(std::vector<Point>{}), std::invalid_argument);
}

TEST_CASE("point sets collapse duplicates into a canonical form") {
  const PointSet s({Point{1, 1}, Point{0, 0}, Point{1, 1}, Point{0, 0}});
  CHECK(s.size() == 2);
  CHECK(s == PointSet({Point{0, 0}, Point{1, 1}}));
}

TEST_CASE("geom object helpers") {
  const GeomObject c = Curve({Point{0, 0}, Point{1, 0}, Point{2, 0}});
  const GeomObject s = PointSet({Point{0, 0, 0}});
  CHECK(is_curve(c));
  CHECK_FALSE(is_curve(s));
  CHECK(complexity(c) == 3);
  CHECK(complexity(s) == 1);
  CHECK(dimension(c) == 2);
  CHECK(dimension(s) == 3);
}
