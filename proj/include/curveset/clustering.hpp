#ifndef CURVESET_CLUSTERING_HPP
#define CURVESET_CLUSTERING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "curveset/geometry.hpp"
#include "curveset/metrics.hpp"
#include "curveset/parallel.hpp"
#include "curveset/rng.hpp"

namespace curveset {

/// The weighted input multiset P with its clustering parameters.
/// Weights are normalized to sum to one; every object must match the metric
/// kind, share dimension `dim`, and have at most `max_complexity` points.
struct ClusteringInstance {
  std::vector<GeomObject> objects;
  std::vector<double> weights;
  MetricKind metric = MetricKind::DiscreteFrechet;
  int k = 1;
  int l = 1;
  int max_complexity = 1;  // m
  int dim = 1;             // d
};

/// Builds a validated instance. Empty `weights` means uniform; otherwise
/// weights must be positive and are normalized here.
inline ClusteringInstance make_instance(std::vector<GeomObject> objects,
                                        std::vector<double> weights,
                                        MetricKind metric, int k, int l) {
  if (objects.empty())
    throw std::invalid_argument("instance: needs at least one object");
  if (k < 1 || l < 1)
    throw std::invalid_argument("instance: k and l must be >= 1");
  ClusteringInstance inst;
  inst.metric = metric;
  inst.k = k;
  inst.l = l;
  inst.dim = static_cast<int>(dimension(objects.front()));
  for (const GeomObject& o : objects) {
    if (is_curve(o) != metric_uses_curves(metric))
      throw std::invalid_argument("instance: object kind does not match metric");
    if (static_cast<int>(dimension(o)) != inst.dim)
      throw std::invalid_argument("instance: mixed object dimensions");
    inst.max_complexity =
        std::max(inst.max_complexity, static_cast<int>(complexity(o)));
  }
  if (weights.empty()) {
    inst.weights.assign(objects.size(), 1.0 / static_cast<double>(objects.size()));
  } else {
    if (weights.size() != objects.size())
      throw std::invalid_argument("instance: one weight per object required");
    double total = 0.0;
    for (double w : weights) {
      if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("instance: weights must be positive");
      total += w;
    }
    inst.weights.resize(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i)
      inst.weights[i] = weights[i] / total;
  }
  inst.objects = std::move(objects);
  return inst;
}

/// Candidate centers; each must have at most l points of the instance's kind.
struct CenterSet {
  std::vector<GeomObject> centers;

  std::size_t size() const { return centers.size(); }
  const GeomObject& operator[](std::size_t i) const { return centers[i]; }
};

inline void validate_centers(const ClusteringInstance& inst,
                             const CenterSet& cs) {
  if (cs.centers.empty())
    throw std::invalid_argument("centers: need at least one center");
  for (const GeomObject& c : cs.centers) {
    if (is_curve(c) != metric_uses_curves(inst.metric))
      throw std::invalid_argument("centers: kind does not match metric");
    if (static_cast<int>(dimension(c)) != inst.dim)
      throw std::invalid_argument("centers: dimension mismatch");
    if (static_cast<int>(complexity(c)) > inst.l)
      throw std::invalid_argument("centers: complexity exceeds l");
  }
}

/// Per-object nearest center (ties to the lowest center index) and the
/// distance to it.
struct Assignment {
  std::vector<std::size_t> owner;
  std::vector<double> dist;
};

inline Assignment assign(const ClusteringInstance& inst, const CenterSet& cs,
                         FrechetTolerance tol = {}) {
  validate_centers(inst, cs);
  Assignment out;
  out.owner.resize(inst.objects.size());
  out.dist.resize(inst.objects.size());
  parallel_for(inst.objects.size(), [&](std::size_t i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cs.size(); ++c) {
      const double d = distance(inst.metric, inst.objects[i], cs[c], tol);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    out.owner[i] = best;
    out.dist[i] = best_d;
  });
  return out;
}

/// cost(P, C') = sum_p mu(p) * min_c d(p, c).
inline double cost(const ClusteringInstance& inst, const CenterSet& cs,
                   FrechetTolerance tol = {}) {
  const Assignment a = assign(inst, cs, tol);
  double total = 0.0;
  for (std::size_t i = 0; i < a.dist.size(); ++i)
    total += inst.weights[i] * a.dist[i];
  return total;
}

namespace detail {

/// Error of replacing subcurve [i..j] by the segment p_i p_j, measured as
/// the max interior-vertex distance to that segment.
inline double shortcut_error_segment(const Curve& c, std::size_t i,
                                     std::size_t j) {
  double worst = 0.0;
  for (std::size_t v = i + 1; v < j; ++v)
    worst = std::max(worst, point_segment_distance(c[v], c[i], c[j]));
  return worst;
}

/// Error of replacing subcurve [i..j] by the vertex pair (p_i, p_j) under
/// the discrete Frechet view: interior vertices map monotonically to one of
/// the two endpoints, split at the best position.
inline double shortcut_error_vertices(const Curve& c, std::size_t i,
                                      std::size_t j) {
  if (j <= i + 1) return 0.0;
  const std::size_t len = j - i - 1;
  // suffix_to_j[t] = max distance of vertices i+1+t .. j-1 to p_j
  std::vector<double> suffix_to_j(len + 1, 0.0);
  for (std::size_t t = len; t-- > 0;)
    suffix_to_j[t] =
        std::max(suffix_to_j[t + 1], euclidean(c[i + 1 + t], c[j]));
  double best = std::numeric_limits<double>::infinity();
  double prefix_to_i = 0.0;
  for (std::size_t split = 0; split <= len; ++split) {
    best = std::min(best, std::max(prefix_to_i, suffix_to_j[split]));
    if (split < len)
      prefix_to_i = std::max(prefix_to_i, euclidean(c[i + 1 + split], c[i]));
  }
  return best;
}

inline double shortcut_error(const Curve& c, std::size_t i, std::size_t j,
                             MetricKind kind) {
  return kind == MetricKind::ContinuousFrechet
             ? shortcut_error_segment(c, i, j)
             : shortcut_error_vertices(c, i, j);
}

/// Greedy longest-skip walk: from each kept vertex jump to the farthest
/// vertex whose shortcut error stays within r. Returns the kept subsequence
/// if it uses at most l vertices, empty otherwise.
inline std::vector<std::size_t> greedy_subsequence(const Curve& c, double r,
                                                   std::size_t l,
                                                   MetricKind kind) {
  const std::size_t n = c.size();
  std::vector<std::size_t> kept{0};
  std::size_t at = 0;
  while (at < n - 1) {
    std::size_t next = at + 1;
    for (std::size_t j = n - 1; j > at + 1; --j) {
      if (shortcut_error(c, at, j, kind) <= r) {
        next = j;
        break;
      }
    }
    kept.push_back(next);
    at = next;
    if (kept.size() > l) return {};
  }
  return kept;
}

inline Curve simplify_curve(const Curve& c, std::size_t l, MetricKind kind) {
  if (c.size() <= l) return c;
  if (l == 1) {
    // A one-vertex center cannot keep both endpoints; pick the vertex
    // minimizing the max distance to the rest.
    std::size_t best = 0;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
      double worst = 0.0;
      for (std::size_t v = 0; v < c.size(); ++v)
        worst = std::max(worst, euclidean(c[i], c[v]));
      if (worst < best_err) {
        best_err = worst;
        best = i;
      }
    }
    return Curve({c[best]});
  }
  // Candidate radii: all shortcut errors that can occur.
  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    for (std::size_t j = i + 2; j < c.size(); ++j)
      candidates.push_back(shortcut_error(c, i, j, kind));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  // Smallest candidate radius for which the greedy walk fits in l vertices.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (greedy_subsequence(c, candidates[mid], l, kind).empty())
      lo = mid + 1;
    else
      hi = mid;
  }
  const std::vector<std::size_t> kept =
      greedy_subsequence(c, candidates[lo], l, kind);
  std::vector<Point> verts;
  verts.reserve(kept.size());
  for (std::size_t idx : kept) verts.push_back(c[idx]);
  return Curve(std::move(verts));
}

/// Gonzalez farthest-point traversal: 2-approximate best Hausdorff l-subset.
inline PointSet simplify_point_set(const PointSet& s, std::size_t l) {
  if (s.size() <= l) return s;
  std::vector<std::size_t> chosen{0};
  std::vector<double> dist_to_chosen(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    dist_to_chosen[i] = euclidean(s[i], s[0]);
  while (chosen.size() < l) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (dist_to_chosen[i] > dist_to_chosen[far]) far = i;
    chosen.push_back(far);
    for (std::size_t i = 0; i < s.size(); ++i)
      dist_to_chosen[i] = std::min(dist_to_chosen[i], euclidean(s[i], s[far]));
  }
  std::vector<Point> pts;
  pts.reserve(chosen.size());
  for (std::size_t idx : chosen) pts.push_back(s[idx]);
  return PointSet(std::move(pts));
}

}  // namespace detail

/// Reduces an object to at most l points. Curves keep a vertex subsequence
/// (including both endpoints when l >= 2) found by binary search over
/// candidate shortcut errors with a greedy longest-skip feasibility check;
/// point sets use Gonzalez farthest-point traversal. Idempotent on its own
/// output, and the identity when the object already has <= l points.
inline GeomObject simplify(const GeomObject& obj, int l, MetricKind kind,
                           FrechetTolerance = {}) {
  if (l < 1) throw std::invalid_argument("simplify: l must be >= 1");
  const auto lu = static_cast<std::size_t>(l);
  if (const Curve* c = std::get_if<Curve>(&obj))
    return detail::simplify_curve(*c, lu, kind);
  return detail::simplify_point_set(std::get<PointSet>(obj), lu);
}

/// At most ceil(beta*k) centers of complexity <= l, with a declared
/// approximation factor alpha.
struct BicriteriaSolution {
  CenterSet centers;
  double alpha = 1.0;
  double beta = 1.0;
};

namespace detail {

struct PoolIndex {
  std::vector<GeomObject> pool;        // distinct simplified objects
  std::vector<std::size_t> object_to_pool;
};

inline PoolIndex build_simplified_pool(const ClusteringInstance& inst) {
  PoolIndex out;
  out.object_to_pool.resize(inst.objects.size());
  for (std::size_t i = 0; i < inst.objects.size(); ++i) {
    GeomObject s = simplify(inst.objects[i], inst.l, inst.metric);
    std::size_t at = out.pool.size();
    for (std::size_t p = 0; p < out.pool.size(); ++p) {
      if (out.pool[p] == s) {
        at = p;
        break;
      }
    }
    if (at == out.pool.size()) out.pool.push_back(std::move(s));
    out.object_to_pool[i] = at;
  }
  return out;
}

/// D[i][c] = distance from object i to pool candidate c.
inline std::vector<std::vector<double>> pool_distance_matrix(
    const ClusteringInstance& inst, const std::vector<GeomObject>& pool) {
  std::vector<std::vector<double>> D(inst.objects.size(),
                                     std::vector<double>(pool.size()));
  parallel_for(inst.objects.size(), [&](std::size_t i) {
    for (std::size_t c = 0; c < pool.size(); ++c)
      D[i][c] = distance(inst.metric, inst.objects[i], pool[c]);
  });
  return D;
}

}  // namespace detail

/// Internal (alpha, beta)-bicriteria: simplify inputs, distance-proportional
/// seeding over the distinct simplified pool, then single-swap local search
/// accepting swaps that improve cost by factor (1 - 1/(4k)), with a budget
/// of 50*k swaps. `alpha_declared` is the factor recorded on the result.
inline BicriteriaSolution bicriteria(const ClusteringInstance& inst,
                                     double beta, double alpha_declared,
                                     std::uint64_t seed) {
  if (beta < 1.0 || alpha_declared < 1.0)
    throw std::invalid_argument("bicriteria: alpha and beta must be >= 1");
  detail::PoolIndex pidx = detail::build_simplified_pool(inst);
  const std::size_t target =
      static_cast<std::size_t>(std::ceil(beta * inst.k));

  if (pidx.pool.size() <= target) {
    return BicriteriaSolution{CenterSet{std::move(pidx.pool)}, alpha_declared,
                              beta};
  }

  const std::vector<std::vector<double>> D =
      detail::pool_distance_matrix(inst, pidx.pool);
  const std::size_t n = inst.objects.size();
  const std::size_t pool_n = pidx.pool.size();

  // Distance-proportional seeding. Mass of a candidate is the weighted
  // current distance of the objects that simplify to it; already-selected
  // candidates are excluded.
  std::mt19937_64 rng = derived_rng(seed, rng_stream::kBicriteriaSeeding);
  std::vector<bool> selected_mask(pool_n, false);
  std::vector<std::size_t> selected;
  std::vector<double> cur_min(n, std::numeric_limits<double>::infinity());
  std::vector<double> mass(pool_n);
  while (selected.size() < target) {
    std::fill(mass.begin(), mass.end(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = pidx.object_to_pool[i];
      if (selected_mask[c]) continue;
      const double w = selected.empty() ? inst.weights[i]
                                        : inst.weights[i] * cur_min[i];
      mass[c] += w;
      total += w;
    }
    std::size_t pick;
    if (total > 0.0) {
      pick = draw_weighted(rng, mass, total);
    } else {
      // All remaining mass is zero; take the first unselected candidate.
      pick = 0;
      while (selected_mask[pick]) ++pick;
    }
    selected_mask[pick] = true;
    selected.push_back(pick);
    for (std::size_t i = 0; i < n; ++i)
      cur_min[i] = std::min(cur_min[i], D[i][pick]);
  }

  // Single-swap local search with cached nearest / second-nearest centers.
  const std::size_t kcount = selected.size();
  std::vector<std::size_t> near1(n);
  std::vector<double> d1(n), d2(n);
  auto refresh = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      double b1 = std::numeric_limits<double>::infinity();
      double b2 = b1;
      std::size_t o1 = 0;
      for (std::size_t s = 0; s < kcount; ++s) {
        const double d = D[i][selected[s]];
        if (d < b1) {
          b2 = b1;
          b1 = d;
          o1 = s;
        } else if (d < b2) {
          b2 = d;
        }
      }
      near1[i] = o1;
      d1[i] = b1;
      d2[i] = b2;
    }
  };
  refresh();
  double cur_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) cur_cost += inst.weights[i] * d1[i];

  const double accept = 1.0 - 1.0 / (4.0 * inst.k);
  const std::size_t budget = 50 * static_cast<std::size_t>(inst.k);
  std::vector<double> swap_cost(kcount);
  for (std::size_t iter = 0; iter < budget; ++iter) {
    double best_cost = cur_cost;
    std::size_t best_in = pool_n, best_out = kcount;
    for (std::size_t cand = 0; cand < pool_n; ++cand) {
      if (selected_mask[cand]) continue;
      // cost after swapping `out` for `cand`, for every out simultaneously
      double base = 0.0;
      std::fill(swap_cost.begin(), swap_cost.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double din = D[i][cand];
        const double keep = std::min(d1[i], din);
        base += inst.weights[i] * keep;
        // If the owner is removed, the object falls back to min(d2, din).
        swap_cost[near1[i]] +=
            inst.weights[i] * (std::min(d2[i], din) - keep);
      }
      for (std::size_t out = 0; out < kcount; ++out) {
        const double c = base + swap_cost[out];
        if (c < best_cost) {
          best_cost = c;
          best_in = cand;
          best_out = out;
        }
      }
    }
    if (best_in == pool_n || best_cost > accept * cur_cost) break;
    selected_mask[selected[best_out]] = false;
    selected_mask[best_in] = true;
    selected[best_out] = best_in;
    refresh();
    cur_cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) cur_cost += inst.weights[i] * d1[i];
  }

  CenterSet cs;
  cs.centers.reserve(kcount);
  for (std::size_t s : selected) cs.centers.push_back(pidx.pool[s]);
  return BicriteriaSolution{std::move(cs), alpha_declared, beta};
}

}  // namespace curveset

#endif  // CURVESET_CLUSTERING_HPP
