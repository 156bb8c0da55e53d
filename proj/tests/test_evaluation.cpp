#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace curveset;

TEST_CASE("candidate pool shape, contract, determinism") {
  std::mt19937_64 g(901);
  const auto inst =
      oracles::random_instance(g, MetricKind::DiscreteFrechet, 12, 6, 2, 2, 3);

  const CandidatePool tiny = candidate_pool(inst, 1, 3, 3, 42);
  REQUIRE(tiny.center_sets.size() == 3);
  for (const CenterSet& cs : tiny.center_sets) CHECK(cs.size() == 1);

  const CandidatePool pool = candidate_pool(inst, 2, 3, 10, 42);
  REQUIRE(pool.center_sets.size() == 10);
  std::size_t random_n = 0, perturbed_n = 0, derived_n = 0;
  for (std::size_t i = 0; i < pool.center_sets.size(); ++i) {
    CHECK(pool.center_sets[i].size() == 2);
    for (const GeomObject& c : pool.center_sets[i].centers)
      CHECK(complexity(c) <= 3);
    switch (pool.provenance[i]) {
      case CandidateProvenance::RandomSubset: ++random_n; break;
      case CandidateProvenance::Perturbed: ++perturbed_n; break;
      case CandidateProvenance::BicriteriaDerived: ++derived_n; break;
    }
  }
  CHECK(random_n == 4);
  CHECK(perturbed_n == 3);
  CHECK(derived_n == 3);

  const CandidatePool again = candidate_pool(inst, 2, 3, 10, 42);
  for (std::size_t i = 0; i < pool.center_sets.size(); ++i) {
    CHECK(again.provenance[i] == pool.provenance[i]);
    REQUIRE(again.center_sets[i].size() == pool.center_sets[i].size());
    for (std::size_t c = 0; c < pool.center_sets[i].size(); ++c)
      CHECK(again.center_sets[i][c] == pool.center_sets[i][c]);
  }

  // k larger than the instance: sampling with replacement still yields k
  const CandidatePool big_k = candidate_pool(inst, 20, 3, 3, 7);
  for (const CenterSet& cs : big_k.center_sets) CHECK(cs.size() == 20);
}

TEST_CASE("identity coreset certifies with zero error") {
  std::mt19937_64 g(902);
  const auto inst =
      oracles::random_instance(g, MetricKind::Hausdorff, 10, 5, 2, 2, 3);
  WeightedCoreset identity;
  identity.meta.sample_count = inst.objects.size();
  identity.meta.total_sensitivity = 1.0;
  identity.meta.eps = 0.1;
  identity.meta.metric = inst.metric;
  identity.meta.k = inst.k;
  identity.meta.l = inst.l;
  for (std::size_t i = 0; i < inst.objects.size(); ++i)
    identity.entries.push_back(
        WeightedEntry{inst.objects[i], inst.weights[i], i});
  const CandidatePool pool = candidate_pool(inst, 2, 3, 9, 5);
  const ErrorReport rep = certify(inst, identity, pool);
  CHECK(rep.max_error == 0.0);
  CHECK(rep.mean_error == 0.0);
  CHECK(rep.pass);
}

TEST_CASE("certify on a zero-variance instance") {
  std::mt19937_64 g(903);
  const Curve c = oracles::random_curve(g, 3, 2);
  std::vector<GeomObject> objs(6, GeomObject(c));
  const auto inst =
      make_instance(std::move(objs), {}, MetricKind::DiscreteFrechet, 1, 3);
  CoresetConfig cfg;
  cfg.eps = 0.2;
  cfg.size_override = 8;
  cfg.seed = 4;
  const WeightedCoreset cs = build_coreset(inst, cfg);
  const CandidatePool pool = candidate_pool(inst, 1, 3, 6, 8);
  const ErrorReport rep = certify(inst, cs, pool);
  // estimate and cost agree up to summation order (weights 1/6 vs 1/8)
  CHECK(rep.max_error <= 1e-12);
  // candidates equal to the shared object have cost 0 and estimate 0
  for (double abs_err : rep.zero_cost_abs) CHECK(abs_err <= 1e-12);
}

TEST_CASE("certify max error matches a per-candidate recomputation") {
  std::mt19937_64 g(904);
  const auto inst =
      oracles::random_instance(g, MetricKind::DiscreteFrechet, 20, 5, 2, 2, 3);
  CoresetConfig cfg;
  cfg.eps = 0.5;
  cfg.size_override = inst.objects.size();
  cfg.seed = 10;
  const WeightedCoreset cs = build_coreset(inst, cfg);
  const CandidatePool pool = candidate_pool(inst, 2, 3, 12, 11);
  const ErrorReport rep = certify(inst, cs, pool);

  double max_err = 0.0;
  for (std::size_t i = 0; i < pool.center_sets.size(); ++i) {
    const double truth = oracles::recompute_cost(inst, pool.center_sets[i]);
    if (truth <= 0.0) continue;
    double est = 0.0;
    for (const WeightedEntry& e : cs.entries) {
      double best = std::numeric_limits<double>::infinity();
      for (const GeomObject& c : pool.center_sets[i].centers)
        best = std::min(best, distance(inst.metric, e.object, c));
      est += e.weight * best;
    }
    max_err = std::max(max_err, std::abs(est - truth) / truth);
  }
  CHECK_THAT(rep.max_error, Catch::Matchers::WithinRel(max_err, 1e-9));
}

TEST_CASE("relative errors are invariant under uniform rescaling") {
  std::mt19937_64 g(905);
  const auto inst =
      oracles::random_instance(g, MetricKind::DiscreteFrechet, 15, 5, 2, 2, 3);
  CoresetConfig cfg;
  cfg.eps = 0.5;
  cfg.size_override = 10;
  cfg.seed = 2;
  const WeightedCoreset cs = build_coreset(inst, cfg);
  const CandidatePool pool = candidate_pool(inst, 2, 3, 6, 3);

  // scale everything by 2 (exact in floating point)
  auto scale_object = [](const GeomObject& o) {
    std::vector<Point> pts;
    for (const Point& p : object_points(o)) {
      std::vector<double> coords(p.coords().begin(), p.coords().end());
      for (double& c : coords) c *= 2.0;
      pts.emplace_back(std::move(coords));
    }
    return is_curve(o) ? GeomObject(Curve(std::move(pts)))
                       : GeomObject(PointSet(std::move(pts)));
  };
  ClusteringInstance scaled = inst;
  for (GeomObject& o : scaled.objects) o = scale_object(o);
  WeightedCoreset scaled_cs = cs;
  for (WeightedEntry& e : scaled_cs.entries) e.object = scale_object(e.object);
  CandidatePool scaled_pool = pool;
  for (CenterSet& cset : scaled_pool.center_sets)
    for (GeomObject& c : cset.centers) c = scale_object(c);

  const ErrorReport rep = certify(inst, cs, pool);
  const ErrorReport srep = certify(scaled, scaled_cs, scaled_pool);
  REQUIRE(rep.rel_errors.size() == srep.rel_errors.size());
  for (std::size_t i = 0; i < rep.rel_errors.size(); ++i)
    CHECK_THAT(rep.rel_errors[i],
               Catch::Matchers::WithinAbs(srep.rel_errors[i], 1e-12));
}

TEST_CASE("lower bound instance distance structure") {
  const int n = 5;
  const double delta = 10.0;
  for (MetricKind metric :
       {MetricKind::ContinuousFrechet, MetricKind::DiscreteFrechet,
        MetricKind::Hausdorff}) {
    const ClusteringInstance inst = lower_bound_instance(n, delta, metric);
    REQUIRE(inst.objects.size() == 6);
    CHECK(inst.max_complexity == 5);
    const bool exact = metric != MetricKind::ContinuousFrechet;
    const double tol = exact ? 1e-12 : 1e-6;
    for (std::size_t i = 1; i < inst.objects.size(); ++i)
      CHECK_THAT(distance(metric, inst.objects[0], inst.objects[i]),
                 Catch::Matchers::WithinAbs(1.0, tol));
    for (std::size_t i = 1; i < inst.objects.size(); ++i) {
      for (std::size_t j = i + 1; j < inst.objects.size(); ++j) {
        // Vertex-restricted metrics pin every spike pair at 2. The
        // continuous leash does better on adjacent interior spikes: one
        // curve can pre-climb its spike edge while the other tops out,
        // giving 2*delta/sqrt(delta^2+4) (verified against a densely
        // resampled discrete-Frechet upper bound). Spikes at the first or
        // last vertex are pinned by the shared start/end instead.
        double expected = 2.0;
        if (!exact && j == i + 1 && i >= 2 &&
            j <= inst.objects.size() - 2)
          expected = 2.0 * delta / std::sqrt(delta * delta + 4.0);
        CHECK_THAT(distance(metric, inst.objects[i], inst.objects[j]),
                   Catch::Matchers::WithinAbs(expected, tol));
      }
    }
  }
  CHECK_THROWS_AS(lower_bound_instance(1, 10.0, MetricKind::DiscreteFrechet),
                  std::invalid_argument);
  CHECK_THROWS_AS(lower_bound_instance(5, 2.0, MetricKind::DiscreteFrechet),
                  std::invalid_argument);
}

TEST_CASE("results are identical across thread caps") {
  std::mt19937_64 g(907);
  const auto inst =
      oracles::random_instance(g, MetricKind::DiscreteFrechet, 30, 6, 2, 2, 3);
  CoresetConfig cfg;
  cfg.eps = 0.3;
  cfg.size_override = 20;
  cfg.seed = 6;
  const CandidatePool pool = candidate_pool(inst, 2, 3, 9, 2);

  setenv("CURVESET_THREADS", "1", 1);
  const WeightedCoreset cs1 = build_coreset(inst, cfg);
  const ErrorReport rep1 = certify(inst, cs1, pool);
  setenv("CURVESET_THREADS", "4", 1);
  const WeightedCoreset cs4 = build_coreset(inst, cfg);
  const ErrorReport rep4 = certify(inst, cs4, pool);
  unsetenv("CURVESET_THREADS");

  REQUIRE(cs1.entries.size() == cs4.entries.size());
  for (std::size_t i = 0; i < cs1.entries.size(); ++i) {
    CHECK(cs1.entries[i].source_index == cs4.entries[i].source_index);
    CHECK(cs1.entries[i].weight == cs4.entries[i].weight);
  }
  CHECK(rep1.max_error == rep4.max_error);
  for (std::size_t i = 0; i < rep1.costs.size(); ++i) {
    CHECK(rep1.costs[i] == rep4.costs[i]);
    CHECK(rep1.estimates[i] == rep4.estimates[i]);
  }
}

TEST_CASE("concentration trial") {
  std::mt19937_64 g(906);
  // zero variance: every estimate is exact
  const Curve c = oracles::random_curve(g, 3, 2);
  std::vector<GeomObject> objs(5, GeomObject(c));
  const auto flat =
      make_instance(std::move(objs), {}, MetricKind::DiscreteFrechet, 1, 3);
  CenterSet fc{{GeomObject(c)}};
  const TrialResult flat_res = concentration_trial(flat, fc, 0.3, 50, 1);
  CHECK(flat_res.failure_rate == 0.0);

  // random instance at the Lemma-style sample size
  const auto inst =
      oracles::random_instance(g, MetricKind::DiscreteFrechet, 25, 5, 2, 2, 3);
  CenterSet centers;
  centers.centers.push_back(simplify(inst.objects[2], inst.l, inst.metric));
  centers.centers.push_back(simplify(inst.objects[13], inst.l, inst.metric));
  const TrialResult res = concentration_trial(inst, centers, 0.3, 100, 9);
  CHECK(res.sample_size >=
        static_cast<std::size_t>(
            std::floor(2.0 * (res.total_sensitivity - 1.0) / 0.09)));
  CHECK(res.failure_rate <= 0.5 + 0.07);

  // doubling a must not increase the failure rate beyond noise
  const TrialResult doubled = concentration_trial(
      inst, centers, 0.3, 100, 9, res.sample_size * 2);
  const double sigma = std::sqrt(0.25 / 100.0);  // worst-case binomial spread
  CHECK(doubled.failure_rate <= res.failure_rate + 2.0 * sigma);
}
