#ifndef CURVESET_SENSITIVITY_HPP
#define CURVESET_SENSITIVITY_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "curveset/clustering.hpp"

namespace curveset {

/// Per-cell Voronoi statistics for a bicriteria solution. Cells that own no
/// objects are dropped; `center` maps each kept cell back to its center
/// index in the solution.
struct ClusterStats {
  std::vector<std::size_t> center;  // center index per nonempty cell
  std::vector<double> mu;           // probability mass of the cell
  std::vector<double> mean_dist;    // m_i: mu-average distance to the center
  double opt_prime = 0.0;           // sum_i mu_i * m_i
};

namespace detail {

inline ClusterStats stats_from_assignment(const ClusteringInstance& inst,
                                          std::size_t center_count,
                                          const Assignment& a) {
  std::vector<double> mass(center_count, 0.0);
  std::vector<double> wdist(center_count, 0.0);
  for (std::size_t i = 0; i < inst.objects.size(); ++i) {
    mass[a.owner[i]] += inst.weights[i];
    wdist[a.owner[i]] += inst.weights[i] * a.dist[i];
  }
  ClusterStats out;
  for (std::size_t c = 0; c < center_count; ++c) {
    if (mass[c] <= 0.0) continue;
    out.center.push_back(c);
    out.mu.push_back(mass[c]);
    out.mean_dist.push_back(wdist[c] / mass[c]);
    out.opt_prime += wdist[c];
  }
  return out;
}

}  // namespace detail

/// mu_i, m_i and opt' for the Voronoi cells of the bicriteria centers.
inline ClusterStats cluster_stats(const ClusteringInstance& inst,
                                  const BicriteriaSolution& bic,
                                  FrechetTolerance tol = {}) {
  const Assignment a = assign(inst, bic.centers, tol);
  return detail::stats_from_assignment(inst, bic.centers.size(), a);
}

/// Per-object sensitivity upper bounds s(p) and their mu-weighted total S.
struct SensitivityProfile {
  std::vector<double> s;
  double total = 0.0;        // S = sum_p mu(p) s(p)
  ClusterStats stats;
  double alpha = 1.0;
  std::size_t center_count = 0;
};

/// s(p) = 2 alpha (2 m_i + d(p, c_i)) / opt' + 4 / mu_i for p in cell i.
/// When opt' = 0 every object sits on its center and the first term is
/// defined as 0; the 4/mu_i term alone still upper-bounds the sensitivity.
inline SensitivityProfile sensitivity_upper_bounds(
    const ClusteringInstance& inst, const BicriteriaSolution& bic,
    FrechetTolerance tol = {}) {
  if (bic.alpha < 1.0)
    throw std::invalid_argument("sensitivity: alpha must be >= 1");
  const Assignment a = assign(inst, bic.centers, tol);
  SensitivityProfile prof;
  prof.stats = detail::stats_from_assignment(inst, bic.centers.size(), a);
  prof.alpha = bic.alpha;
  prof.center_count = bic.centers.size();

  // Cell lookup: center index -> position in the compacted stats.
  std::vector<std::size_t> cell_of_center(bic.centers.size());
  for (std::size_t c = 0; c < prof.stats.center.size(); ++c)
    cell_of_center[prof.stats.center[c]] = c;

  const double opt_prime = prof.stats.opt_prime;
  prof.s.resize(inst.objects.size());
  for (std::size_t i = 0; i < inst.objects.size(); ++i) {
    const std::size_t cell = cell_of_center[a.owner[i]];
    const double m_i = prof.stats.mean_dist[cell];
    const double mu_i = prof.stats.mu[cell];
    double value = 4.0 / mu_i;
    if (opt_prime > 0.0)
      value += 2.0 * bic.alpha * (2.0 * m_i + a.dist[i]) / opt_prime;
    prof.s[i] = value;
    prof.total += inst.weights[i] * value;
  }
  return prof;
}

/// Importance-sampling distribution q(p) = s(p) mu(p) / S.
inline std::vector<double> sampling_distribution(
    const SensitivityProfile& prof, const ClusteringInstance& inst) {
  if (prof.s.size() != inst.objects.size())
    throw std::invalid_argument(
        "sampling_distribution: profile does not match instance");
  std::vector<double> q(prof.s.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    q[i] = prof.s[i] * inst.weights[i] / prof.total;
  return q;
}

}  // namespace curveset

#endif  // CURVESET_SENSITIVITY_HPP
