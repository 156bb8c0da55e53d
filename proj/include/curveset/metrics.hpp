#ifndef CURVESET_METRICS_HPP
#define CURVESET_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "curveset/geometry.hpp"

namespace curveset {

enum class MetricKind { ContinuousFrechet, DiscreteFrechet, Hausdorff };

inline const char* metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::ContinuousFrechet: return "frechet";
    case MetricKind::DiscreteFrechet: return "discrete-frechet";
    case MetricKind::Hausdorff: return "hausdorff";
  }
  return "?";
}

inline MetricKind parse_metric(const std::string& name) {
  if (name == "frechet") return MetricKind::ContinuousFrechet;
  if (name == "discrete-frechet") return MetricKind::DiscreteFrechet;
  if (name == "hausdorff") return MetricKind::Hausdorff;
  throw std::invalid_argument("unknown metric '" + name +
                              "' (expected frechet|discrete-frechet|hausdorff)");
}

inline bool metric_uses_curves(MetricKind kind) {
  return kind != MetricKind::Hausdorff;
}

/// Termination control for the continuous Frechet value search.
struct FrechetTolerance {
  double relative = 1e-9;
  double absolute = 1e-12;
};

/// Exact discrete Frechet distance via dynamic programming over the
/// |c1| x |c2| grid:
///   value(i,j) = max(||p_i - q_j||,
///                    min(value(i-1,j), value(i,j-1), value(i-1,j-1))).
inline double discrete_frechet(const Curve& c1, const Curve& c2) {
  detail::require_same_dim(c1[0], c2[0], "discrete_frechet");
  const std::size_t n1 = c1.size(), n2 = c2.size();
  // One row suffices; prev holds row i-1, cur is being filled.
  std::vector<double> prev(n2), cur(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const double d = euclidean(c1[i], c2[j]);
      double reach;
      if (i == 0 && j == 0) {
        reach = d;
      } else if (i == 0) {
        reach = std::max(cur[j - 1], d);
      } else if (j == 0) {
        reach = std::max(prev[0], d);
      } else {
        reach = std::max(std::min({cur[j - 1], prev[j], prev[j - 1]}), d);
      }
      cur[j] = reach;
    }
    std::swap(prev, cur);
  }
  return prev[n2 - 1];
}

namespace detail {

struct Interval {
  double lo = 1.0, hi = 0.0;  // empty unless lo <= hi
  bool empty() const { return lo > hi; }
};

/// Parameter interval {t in [0,1] : ||a0 + t (a1 - a0) - c|| <= r}.
inline Interval segment_ball_interval(const Point& a0, const Point& a1,
                                      const Point& c, double r) {
  double A = 0.0, B = 0.0, C = 0.0;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    const double u = a1[i] - a0[i];
    const double w = a0[i] - c[i];
    A += u * u;
    B += 2.0 * u * w;
    C += w * w;
  }
  C -= r * r;
  if (A <= 0.0) {
    // Degenerate segment: free everywhere or nowhere.
    return C <= 0.0 ? Interval{0.0, 1.0} : Interval{};
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return Interval{};
  const double root = std::sqrt(disc);
  const double t0 = (-B - root) / (2.0 * A);
  const double t1 = (-B + root) / (2.0 * A);
  Interval iv{std::max(t0, 0.0), std::min(t1, 1.0)};
  return iv.empty() ? Interval{} : iv;
}

/// Max distance from a fixed point to a polygonal curve is attained at a
/// vertex (the distance along each edge is convex).
inline bool point_within_of_all_vertices(const Point& p, const Curve& c,
                                         double r) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (euclidean(p, c[i]) > r) return false;
  return true;
}

}  // namespace detail

/// Decides d_F(c1, c2) <= r by monotone reachability over the free-space
/// diagram (Alt-Godau). Cell (i,j) spans edge i of c1 and edge j of c2; the
/// free space inside a cell is convex, so interval propagation on cell
/// boundaries suffices.
inline bool continuous_frechet_decision(const Curve& c1, const Curve& c2,
                                        double r) {
  detail::require_same_dim(c1[0], c2[0], "continuous_frechet_decision");
  if (r < 0.0)
    throw std::invalid_argument("continuous_frechet_decision: negative radius");
  if (euclidean(c1[0], c2[0]) > r) return false;
  if (euclidean(c1[c1.size() - 1], c2[c2.size() - 1]) > r) return false;

  // Single-vertex curves degenerate to vertex checks.
  if (c1.size() == 1) return detail::point_within_of_all_vertices(c1[0], c2, r);
  if (c2.size() == 1) return detail::point_within_of_all_vertices(c2[0], c1, r);

  using detail::Interval;
  const std::size_t cols = c1.size() - 1;  // cells along c1
  const std::size_t rows = c2.size() - 1;  // cells along c2

  // reach_left[j]: reachable part of the left edge of cell (i, j) for the
  // current column i, i.e. c1 pinned at vertex i while c2 moves on edge j.
  std::vector<Interval> reach_left(rows);
  // reach_bottom: reachable part of the bottom edge of the cell above, i.e.
  // c2 pinned at vertex j+1 while c1 moves on edge i.
  std::vector<Interval> reach_bottom(cols);

  // Left boundary: only upward moves through free left edges, each entered
  // at its bottom endpoint.
  bool blocked = false;
  for (std::size_t j = 0; j < rows; ++j) {
    Interval free = detail::segment_ball_interval(c2[j], c2[j + 1], c1[0], r);
    if (!blocked && !free.empty() && free.lo <= 0.0) {
      reach_left[j] = free;
      if (free.hi < 1.0) blocked = true;
    } else {
      reach_left[j] = Interval{};
      blocked = true;
    }
  }
  // Bottom boundary, symmetric.
  blocked = false;
  for (std::size_t i = 0; i < cols; ++i) {
    Interval free = detail::segment_ball_interval(c1[i], c1[i + 1], c2[0], r);
    if (!blocked && !free.empty() && free.lo <= 0.0) {
      reach_bottom[i] = free;
      if (free.hi < 1.0) blocked = true;
    } else {
      reach_bottom[i] = Interval{};
      blocked = true;
    }
  }

  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      const Interval entry_left = reach_left[j];
      const Interval entry_bottom = reach_bottom[i];

      // Right edge of cell (i,j): c1 pinned at vertex i+1. Entering from the
      // bottom edge makes every free t reachable; entering only from the
      // left edge restricts to t >= the lowest reachable entry.
      Interval right{};
      if (!entry_left.empty() || !entry_bottom.empty()) {
        Interval free =
            detail::segment_ball_interval(c2[j], c2[j + 1], c1[i + 1], r);
        if (!free.empty()) {
          if (!entry_bottom.empty())
            right = free;
          else if (free.hi >= entry_left.lo)
            right = Interval{std::max(free.lo, entry_left.lo), free.hi};
        }
      }
      // Top edge of cell (i,j): c2 pinned at vertex j+1, symmetric rule.
      Interval top{};
      if (!entry_left.empty() || !entry_bottom.empty()) {
        Interval free =
            detail::segment_ball_interval(c1[i], c1[i + 1], c2[j + 1], r);
        if (!free.empty()) {
          if (!entry_left.empty())
            top = free;
          else if (free.hi >= entry_bottom.lo)
            top = Interval{std::max(free.lo, entry_bottom.lo), free.hi};
        }
      }

      reach_left[j] = right;    // left edge of cell (i+1, j)
      reach_bottom[i] = top;    // bottom edge of cell (i, j+1)
    }
  }

  // Endpoint corner (1,1) of the top-right cell is reachable iff the final
  // right edge reaches t = 1 or the final top edge reaches s = 1.
  const bool via_right = !reach_left[rows - 1].empty() &&
                         reach_left[rows - 1].hi >= 1.0;
  const bool via_top = !reach_bottom[cols - 1].empty() &&
                       reach_bottom[cols - 1].hi >= 1.0;
  return via_right || via_top;
}

/// Continuous Frechet value by bisection between the endpoint lower bound
/// and the discrete Frechet upper bound. The result v satisfies
/// decision(v*(1+rel)+abs) = true and decision(v*(1-rel)-abs) = false.
inline double continuous_frechet(const Curve& c1, const Curve& c2,
                                 FrechetTolerance tol = {}) {
  detail::require_same_dim(c1[0], c2[0], "continuous_frechet");
  const double lb = std::max(euclidean(c1[0], c2[0]),
                             euclidean(c1[c1.size() - 1], c2[c2.size() - 1]));
  if (continuous_frechet_decision(c1, c2, lb)) return lb;
  double lo = lb;
  double hi = discrete_frechet(c1, c2);
  // d_F <= d_dF mathematically; nudge past floating-point boundary wobble.
  while (!continuous_frechet_decision(c1, c2, hi))
    hi = hi * (1.0 + tol.relative) + tol.absolute;
  while (hi - lo > tol.relative * hi + tol.absolute) {
    const double mid = 0.5 * (lo + hi);
    if (continuous_frechet_decision(c1, c2, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

/// Hausdorff distance: max of the two directed farthest-nearest distances.
/// Equals the min over covering correspondences of the max matched pair,
/// since the optimal correspondence matches each point to a nearest one.
inline double hausdorff(const PointSet& s1, const PointSet& s2) {
  detail::require_same_dim(s1[0], s2[0], "hausdorff");
  auto directed = [](const PointSet& from, const PointSet& to) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < to.size(); ++j)
        best = std::min(best, euclidean(from[i], to[j]));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(s1, s2), directed(s2, s1));
}

/// Metric dispatch; objects must match the kind.
inline double distance(MetricKind kind, const GeomObject& a,
                       const GeomObject& b, FrechetTolerance tol = {}) {
  switch (kind) {
    case MetricKind::ContinuousFrechet:
    case MetricKind::DiscreteFrechet: {
      const Curve* ca = std::get_if<Curve>(&a);
      const Curve* cb = std::get_if<Curve>(&b);
      if (!ca || !cb)
        throw std::invalid_argument(
            "distance: Frechet metrics require curve objects");
      return kind == MetricKind::DiscreteFrechet
                 ? discrete_frechet(*ca, *cb)
                 : continuous_frechet(*ca, *cb, tol);
    }
    case MetricKind::Hausdorff: {
      const PointSet* pa = std::get_if<PointSet>(&a);
      const PointSet* pb = std::get_if<PointSet>(&b);
      if (!pa || !pb)
        throw std::invalid_argument(
            "distance: Hausdorff requires point-set objects");
      return hausdorff(*pa, *pb);
    }
  }
  throw std::invalid_argument("distance: unknown metric kind");
}

}  // namespace curveset

#endif  // CURVESET_METRICS_HPP
