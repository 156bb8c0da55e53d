#ifndef CURVESET_GEOMETRY_HPP
#define CURVESET_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace curveset {

/// Absolute tolerance used by geometric comparisons throughout the library.
inline constexpr double kGeomEps = 1e-12;

/// A point in R^d. Coordinates must be finite and d >= 1.
class Point {
 public:
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
      throw std::invalid_argument("Point: dimension must be >= 1");
    for (double c : coords_)
      if (!std::isfinite(c))
        throw std::invalid_argument("Point: coordinates must be finite");
  }

  Point(std::initializer_list<double> coords)
      : Point(std::vector<double>(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator<(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(),
                                        b.coords_.begin(), b.coords_.end());
  }

 private:
  std::vector<double> coords_;
};

namespace detail {
inline void require_same_dim(const Point& a, const Point& b,
                             const char* where) {
  if (a.dim() != b.dim())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
}
}  // namespace detail

/// l2 distance between two points of equal dimension.
inline double euclidean(const Point& a, const Point& b) {
  detail::require_same_dim(a, b, "euclidean");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

/// min over t in [0,1] of ||x - (a + t (b - a))||. Handles a == b.
inline double point_segment_distance(const Point& x, const Point& a,
                                     const Point& b) {
  detail::require_same_dim(x, a, "point_segment_distance");
  detail::require_same_dim(x, b, "point_segment_distance");
  double len2 = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double u = b[i] - a[i];
    len2 += u * u;
    dot += u * (x[i] - a[i]);
  }
  if (len2 <= 0.0) return euclidean(x, a);
  const double t = std::clamp(dot / len2, 0.0, 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double diff = x[i] - (a[i] + t * (b[i] - a[i]));
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

/// A polygonal curve: ordered nonempty vertex sequence, shared dimension.
class Curve {
 public:
  explicit Curve(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty())
      throw std::invalid_argument("Curve: needs at least one vertex");
    for (const Point& p : vertices_)
      detail::require_same_dim(p, vertices_.front(), "Curve");
  }

  std::size_t size() const { return vertices_.size(); }
  std::size_t dim() const { return vertices_.front().dim(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  const std::vector<Point>& vertices() const { return vertices_; }

  friend bool operator==(const Curve& a, const Curve& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  std::vector<Point> vertices_;
};

/// A finite point set, canonicalized on construction: points sorted
/// lexicographically and exact duplicates collapsed.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty())
      throw std::invalid_argument("PointSet: needs at least one point");
    for (const Point& p : points_)
      detail::require_same_dim(p, points_.front(), "PointSet");
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.front().dim(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<Point> points_;
};

/// Either a Curve (Frechet metrics) or a PointSet (Hausdorff).
using GeomObject = std::variant<Curve, PointSet>;

inline bool is_curve(const GeomObject& o) {
  return std::holds_alternative<Curve>(o);
}

inline std::size_t complexity(const GeomObject& o) {
  return std::visit([](const auto& g) { return g.size(); }, o);
}

inline std::size_t dimension(const GeomObject& o) {
  return std::visit([](const auto& g) { return g.dim(); }, o);
}

/// Flat view of an object's points, regardless of kind.
inline const std::vector<Point>& object_points(const GeomObject& o) {
  if (const Curve* c = std::get_if<Curve>(&o)) return c->vertices();
  return std::get<PointSet>(o).points();
}

}  // namespace curveset

#endif  // CURVESET_GEOMETRY_HPP
