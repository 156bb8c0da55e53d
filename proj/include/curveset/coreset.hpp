#ifndef CURVESET_CORESET_HPP
#define CURVESET_CORESET_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "curveset/sensitivity.hpp"

namespace curveset {

/// Knobs for the end-to-end coreset build. The headline size formula hides
/// an impractically large constant, so desk-scale runs set `size_override`.
struct CoresetConfig {
  double eps = 0.1;               // target coreset accuracy, in (0,1)
  double delta_exponent = 1.0;    // the delta of the m^delta factor
  double size_constant = 1.0;     // stand-in for the Theta constant
  std::optional<std::size_t> size_override;
  std::uint64_t seed = 0;
  double alpha = 16.0;            // declared bicriteria factor
  double beta = 2.0;              // bicriteria center multiplier
};

inline void validate_config(const CoresetConfig& cfg) {
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
    throw std::invalid_argument("config: eps must be in (0,1)");
  if (!(cfg.delta_exponent > 0.0))
    throw std::invalid_argument("config: delta exponent must be positive");
  if (!(cfg.size_constant > 0.0))
    throw std::invalid_argument("config: size constant must be positive");
  if (cfg.size_override && *cfg.size_override < 1)
    throw std::invalid_argument("config: size override must be >= 1");
  if (cfg.alpha < 1.0 || cfg.beta < 1.0)
    throw std::invalid_argument("config: alpha and beta must be >= 1");
}

/// ceil(C * k^3 l m^delta d / eps^2 * ln(k l / eps + e)), clamped to >= 1.
/// The +e keeps the log >= 1 at degenerate parameters. An explicit override
/// wins unconditionally.
inline std::size_t sample_size(int k, int l, int m, int d,
                               const CoresetConfig& cfg) {
  validate_config(cfg);
  if (cfg.size_override) return *cfg.size_override;
  if (k < 1 || l < 1 || m < 1 || d < 1)
    throw std::invalid_argument("sample_size: parameters must be positive");
  const double kd = k, ld = l, md = m, dd = d;
  const double pre = cfg.size_constant * kd * kd * kd * ld *
                     std::pow(md, cfg.delta_exponent) * dd /
                     (cfg.eps * cfg.eps);
  const double value =
      pre * std::log(kd * ld / cfg.eps + std::numbers::e);
  // clamp below the size_t range; the theoretical constant easily
  // overflows it for honest parameters
  const double clamped = std::clamp(std::ceil(value), 1.0, 9e18);
  return static_cast<std::size_t>(clamped);
}

/// a independent draws from q (with replacement), reproducible per seed.
inline std::vector<std::size_t> draw_sample(const ClusteringInstance& inst,
                                            const std::vector<double>& q,
                                            std::size_t a,
                                            std::uint64_t seed) {
  if (a < 1) throw std::invalid_argument("draw_sample: need at least one draw");
  if (q.size() != inst.objects.size())
    throw std::invalid_argument("draw_sample: q does not match instance");
  double total = 0.0;
  for (double p : q) total += p;
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("draw_sample: q must sum to 1");
  std::vector<double> cumulative(q.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    acc += q[i];
    cumulative[i] = acc;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> out(a);
  for (std::size_t t = 0; t < a; ++t) {
    const double r = uniform01(rng) * total;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), r);
    out[t] = it == cumulative.end() ? q.size() - 1
                                    : static_cast<std::size_t>(
                                          it - cumulative.begin());
  }
  return out;
}

/// One sampled object with its reweighting. Duplicates stay separate entries.
struct WeightedEntry {
  GeomObject object;
  double weight = 0.0;
  std::size_t source_index = 0;
};

struct CoresetMeta {
  std::size_t sample_count = 0;  // a
  double total_sensitivity = 0;  // S
  double opt_prime = 0.0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  MetricKind metric = MetricKind::DiscreteFrechet;
  int k = 1;
  int l = 1;
  double alpha = 1.0;
  double beta = 1.0;
  double size_constant = 1.0;
  double delta_exponent = 1.0;
};

struct WeightedCoreset {
  std::vector<WeightedEntry> entries;
  CoresetMeta meta;
};

/// End-to-end build: bicriteria -> sensitivity bounds -> q -> sample size ->
/// draws, with weight S / (a s(p)) per entry. The user seed drives the
/// bicriteria seeding and the sample draws through independent streams.
inline WeightedCoreset build_coreset(const ClusteringInstance& inst,
                                     const CoresetConfig& cfg) {
  validate_config(cfg);
  const BicriteriaSolution bic =
      bicriteria(inst, cfg.beta, cfg.alpha, cfg.seed);
  const SensitivityProfile prof = sensitivity_upper_bounds(inst, bic);
  const std::vector<double> q = sampling_distribution(prof, inst);
  const std::size_t a =
      sample_size(inst.k, inst.l, inst.max_complexity, inst.dim, cfg);
  const std::vector<std::size_t> picks =
      draw_sample(inst, q, a, mix_seed(cfg.seed, rng_stream::kCoresetDraw));

  WeightedCoreset cs;
  cs.entries.reserve(picks.size());
  const double a_real = static_cast<double>(a);
  for (std::size_t idx : picks) {
    cs.entries.push_back(WeightedEntry{
        inst.objects[idx], prof.total / (a_real * prof.s[idx]), idx});
  }
  cs.meta.sample_count = a;
  cs.meta.total_sensitivity = prof.total;
  cs.meta.opt_prime = prof.stats.opt_prime;
  cs.meta.eps = cfg.eps;
  cs.meta.seed = cfg.seed;
  cs.meta.metric = inst.metric;
  cs.meta.k = inst.k;
  cs.meta.l = inst.l;
  cs.meta.alpha = cfg.alpha;
  cs.meta.beta = cfg.beta;
  cs.meta.size_constant = cfg.size_constant;
  cs.meta.delta_exponent = cfg.delta_exponent;
  return cs;
}

/// Estimator sum_entries omega * d(object, C'); unbiased for cost(P, C').
inline double coreset_cost(const WeightedCoreset& cs, const CenterSet& centers,
                           MetricKind metric, FrechetTolerance tol = {}) {
  if (centers.centers.empty())
    throw std::invalid_argument("coreset_cost: need at least one center");
  std::vector<double> per_entry(cs.entries.size());
  parallel_for(cs.entries.size(), [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (const GeomObject& c : centers.centers)
      best = std::min(best, distance(metric, cs.entries[i].object, c, tol));
    per_entry[i] = cs.entries[i].weight * best;
  });
  double total = 0.0;
  for (double v : per_entry) total += v;
  return total;
}

}  // namespace curveset

#endif  // CURVESET_CORESET_HPP
