#ifndef CURVESET_EVALUATION_HPP
#define CURVESET_EVALUATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curveset/coreset.hpp"

namespace curveset {

enum class CandidateProvenance { RandomSubset, Perturbed, BicriteriaDerived };

inline const char* provenance_name(CandidateProvenance p) {
  switch (p) {
    case CandidateProvenance::RandomSubset: return "random-subset";
    case CandidateProvenance::Perturbed: return "perturbed";
    case CandidateProvenance::BicriteriaDerived: return "bicriteria-derived";
  }
  return "?";
}

/// Finite surrogate for "any k centers from C": a tagged list of candidate
/// center sets, each of size exactly k with complexity <= l.
struct CandidatePool {
  std::vector<CenterSet> center_sets;
  std::vector<CandidateProvenance> provenance;
};

namespace detail {

/// Diagonal of the coordinate bounding box across all object points; the
/// perturbation scale for the adversarial pool third.
inline double instance_diameter(const ClusteringInstance& inst) {
  const std::size_t d = static_cast<std::size_t>(inst.dim);
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (const GeomObject& o : inst.objects) {
    for (const Point& p : object_points(o)) {
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) sum += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return std::sqrt(sum);
}

inline GeomObject perturb_object(const GeomObject& o, double scale,
                                 std::mt19937_64& rng) {
  const std::vector<Point>& pts = object_points(o);
  std::vector<Point> moved;
  moved.reserve(pts.size());
  for (const Point& p : pts) {
    std::vector<double> coords(p.coords().begin(), p.coords().end());
    for (double& c : coords) c += scale * gaussian(rng);
    moved.emplace_back(std::move(coords));
  }
  if (is_curve(o)) return Curve(std::move(moved));
  return PointSet(std::move(moved));
}

/// k draws from the pool, without replacement when possible.
inline std::vector<std::size_t> draw_k_subset(std::mt19937_64& rng,
                                              std::size_t pool_size,
                                              std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  if (pool_size >= k) {
    std::vector<std::size_t> avail(pool_size);
    std::iota(avail.begin(), avail.end(), std::size_t{0});
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t at = uniform_index(rng, avail.size());
      out.push_back(avail[at]);
      avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(at));
    }
  } else {
    for (std::size_t t = 0; t < k; ++t)
      out.push_back(uniform_index(rng, pool_size));
  }
  return out;
}

}  // namespace detail

/// `count` candidate center sets, split into thirds: uniformly random
/// k-subsets of the simplified inputs, the same with per-coordinate Gaussian
/// noise at 10% of the instance diameter, and bicriteria runs under distinct
/// derived seeds truncated/padded to k. Deterministic per seed.
inline CandidatePool candidate_pool(const ClusteringInstance& inst, int k,
                                    int l, std::size_t count,
                                    std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("candidate_pool: count must be >= 1");
  if (k < 1 || l < 1)
    throw std::invalid_argument("candidate_pool: k and l must be >= 1");
  std::vector<GeomObject> pool;
  pool.reserve(inst.objects.size());
  for (const GeomObject& o : inst.objects)
    pool.push_back(simplify(o, l, inst.metric));

  const std::size_t ku = static_cast<std::size_t>(k);
  const std::size_t base = count / 3, rem = count % 3;
  const std::size_t n_random = base + (rem > 0 ? 1 : 0);
  const std::size_t n_perturbed = base + (rem > 1 ? 1 : 0);
  const std::size_t n_bicriteria = base;

  CandidatePool out;
  out.center_sets.reserve(count);
  out.provenance.reserve(count);

  std::mt19937_64 rng_sub = derived_rng(seed, rng_stream::kPoolSubsets);
  for (std::size_t t = 0; t < n_random; ++t) {
    CenterSet cs;
    for (std::size_t idx : detail::draw_k_subset(rng_sub, pool.size(), ku))
      cs.centers.push_back(pool[idx]);
    out.center_sets.push_back(std::move(cs));
    out.provenance.push_back(CandidateProvenance::RandomSubset);
  }

  std::mt19937_64 rng_pert = derived_rng(seed, rng_stream::kPoolPerturb);
  const double scale = 0.1 * detail::instance_diameter(inst);
  for (std::size_t t = 0; t < n_perturbed; ++t) {
    CenterSet cs;
    for (std::size_t idx : detail::draw_k_subset(rng_pert, pool.size(), ku))
      cs.centers.push_back(detail::perturb_object(pool[idx], scale, rng_pert));
    out.center_sets.push_back(std::move(cs));
    out.provenance.push_back(CandidateProvenance::Perturbed);
  }

  ClusteringInstance derived = inst;
  derived.k = k;
  derived.l = l;
  for (std::size_t t = 0; t < n_bicriteria; ++t) {
    const BicriteriaSolution bic = bicriteria(
        derived, 1.0, 16.0, mix_seed(seed, rng_stream::kPoolBicriteria + t));
    CenterSet cs;
    for (std::size_t c = 0; c < bic.centers.size() && cs.centers.size() < ku;
         ++c)
      cs.centers.push_back(bic.centers[c]);
    std::mt19937_64 rng_pad =
        derived_rng(seed, rng_stream::kPoolBicriteria + t);
    while (cs.centers.size() < ku)
      cs.centers.push_back(pool[uniform_index(rng_pad, pool.size())]);
    out.center_sets.push_back(std::move(cs));
    out.provenance.push_back(CandidateProvenance::BicriteriaDerived);
  }
  return out;
}

/// Relative-error report for a coreset against a candidate pool. Candidates
/// with zero true cost are excluded from the relative statistics and kept as
/// absolute errors.
struct ErrorReport {
  double eps = 0.0;
  double max_error = 0.0;
  double mean_error = 0.0;
  bool pass = false;
  std::vector<double> costs;       // per candidate
  std::vector<double> estimates;   // per candidate
  std::vector<double> rel_errors;  // per positive-cost candidate, in order
  std::vector<std::size_t> zero_cost_indices;
  std::vector<double> zero_cost_abs;
};

/// Compares coreset_cost against cost on every candidate. Pass requires
/// max relative error <= eps and near-zero estimates on zero-cost
/// candidates.
inline ErrorReport certify(const ClusteringInstance& inst,
                           const WeightedCoreset& cs,
                           const CandidatePool& pool,
                           FrechetTolerance tol = {}) {
  if (pool.center_sets.empty())
    throw std::invalid_argument("certify: empty candidate pool");
  ErrorReport rep;
  rep.eps = cs.meta.eps;
  const std::size_t n = pool.center_sets.size();
  rep.costs.resize(n);
  rep.estimates.resize(n);
  parallel_for(n, [&](std::size_t i) {
    rep.costs[i] = cost(inst, pool.center_sets[i], tol);
    rep.estimates[i] = coreset_cost(cs, pool.center_sets[i], inst.metric, tol);
  });
  double sum = 0.0;
  bool zero_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (rep.costs[i] > 0.0) {
      const double rel = std::abs(rep.estimates[i] - rep.costs[i]) / rep.costs[i];
      rep.rel_errors.push_back(rel);
      rep.max_error = std::max(rep.max_error, rel);
      sum += rel;
    } else {
      rep.zero_cost_indices.push_back(i);
      rep.zero_cost_abs.push_back(rep.estimates[i]);
      if (rep.estimates[i] > 1e-9) zero_ok = false;
    }
  }
  rep.mean_error =
      rep.rel_errors.empty() ? 0.0 : sum / static_cast<double>(rep.rel_errors.size());
  rep.pass = rep.max_error <= rep.eps && zero_ok;
  return rep;
}

/// Adversarial instance: tau_r on the x-axis plus n curves that dip to
/// y = -1 everywhere except a single spike to y = +1. Under both Frechet
/// variants and Hausdorff, d(tau_r, tau_i) = 1 and d(tau_i, tau_j) = 2.
inline ClusteringInstance lower_bound_instance(int n, double delta,
                                               MetricKind metric) {
  if (n < 2) throw std::invalid_argument("lower_bound_instance: n must be >= 2");
  if (delta < 4.0)
    throw std::invalid_argument("lower_bound_instance: delta must be >= 4");
  std::vector<GeomObject> objects;
  objects.reserve(static_cast<std::size_t>(n) + 1);
  auto emit = [&](std::vector<Point> pts) {
    if (metric_uses_curves(metric))
      objects.emplace_back(Curve(std::move(pts)));
    else
      objects.emplace_back(PointSet(std::move(pts)));
  };
  std::vector<Point> reference;
  for (int j = 0; j < n; ++j) reference.push_back(Point{(j)*delta, 0.0});
  emit(std::move(reference));
  for (int i = 0; i < n; ++i) {
    std::vector<Point> pts;
    for (int j = 0; j < n; ++j)
      pts.push_back(Point{j * delta, j == i ? 1.0 : -1.0});
    emit(std::move(pts));
  }
  return make_instance(std::move(objects), {}, metric, 1, n);
}

struct TrialResult {
  double failure_rate = 0.0;
  std::size_t sample_size = 0;     // a per trial
  double total_sensitivity = 0.0;  // S
  bool size_clamped = false;       // S <= 1 forced a = 1
};

/// Monte Carlo concentration check for a fixed center set: per trial, draw
/// a = ceil(2 (S - 1) / eps^2) samples from q and count estimates farther
/// than eps * cost from the true cost. Per-trial derived seeds keep results
/// order-independent. `size_override` substitutes a different a.
inline TrialResult concentration_trial(
    const ClusteringInstance& inst, const CenterSet& centers, double eps,
    std::size_t trials, std::uint64_t seed,
    std::optional<std::size_t> size_override = std::nullopt,
    FrechetTolerance tol = {}) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("concentration_trial: eps must be in (0,1)");
  if (trials < 1)
    throw std::invalid_argument("concentration_trial: trials must be >= 1");
  const BicriteriaSolution bic =
      bicriteria(inst, 2.0, 16.0, mix_seed(seed, rng_stream::kTrialBicriteria));
  const SensitivityProfile prof = sensitivity_upper_bounds(inst, bic, tol);
  const std::vector<double> q = sampling_distribution(prof, inst);

  TrialResult res;
  res.total_sensitivity = prof.total;
  if (prof.total <= 1.0) {
    res.sample_size = 1;
    res.size_clamped = true;
  } else {
    res.sample_size = static_cast<std::size_t>(
        std::ceil(2.0 * (prof.total - 1.0) / (eps * eps)));
  }
  if (size_override) res.sample_size = std::max<std::size_t>(1, *size_override);

  // f(x) and the true cost once; trials then only draw and accumulate.
  const Assignment a = assign(inst, centers, tol);
  double true_cost = 0.0;
  for (std::size_t i = 0; i < inst.objects.size(); ++i)
    true_cost += inst.weights[i] * a.dist[i];

  std::vector<std::uint8_t> failed(trials, 0);
  parallel_for(trials, [&](std::size_t t) {
    std::mt19937_64 rng = derived_rng(seed, rng_stream::kTrialBase + t);
    double estimate = 0.0;
    for (std::size_t s = 0; s < res.sample_size; ++s) {
      const double r = uniform01(rng);
      double acc = 0.0;
      std::size_t pick = q.size() - 1;
      for (std::size_t i = 0; i < q.size(); ++i) {
        acc += q[i];
        if (r < acc) {
          pick = i;
          break;
        }
      }
      estimate += prof.total /
                  (static_cast<double>(res.sample_size) * prof.s[pick]) *
                  a.dist[pick];
    }
    const double diff = std::abs(estimate - true_cost);
    // An exact hit never counts as a failure, even at true cost 0.
    failed[t] = (diff >= eps * true_cost && diff > 0.0) ? 1 : 0;
  });
  std::size_t failures = 0;
  for (std::uint8_t f : failed) failures += f;
  res.failure_rate = static_cast<double>(failures) / static_cast<double>(trials);
  return res;
}

}  // namespace curveset

#endif  // CURVESET_EVALUATION_HPP
