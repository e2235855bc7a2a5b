#include <gtest/gtest.h>

#include <sstream>

#include "warmflow/errors.h"
#include "warmflow/experiments.h"
#include "warmflow/generators.h"
#include "warmflow/learner.h"
#include "warmflow/maxflow.h"

namespace warmflow {
namespace {

std::string strip_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    out << line.substr(0, line.rfind(',')) << '\n';
  }
  return out.str();
}

TEST(Generators, Lattice20Shape) {
  const FlowNetwork g = lattice20_network();
  EXPECT_EQ(g.edge_count(), 20);
  EXPECT_EQ(g.node_count(), 11);
  EXPECT_GT(flow_value(g, max_flow(g).flow), 0);
}

TEST(Generators, SynthesizedPredictionHitsTargetExactly) {
  const FlowNetwork g = lattice20_network();
  const FlowAssignment opt = max_flow(g).flow;
  for (int64_t target : {0, 2, 5, 10, 17, 30}) {
    for (uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      const auto pred = synthesize_prediction(g, opt, target, rng);
      ASSERT_TRUE(pred.has_value()) << target << " " << seed;
      EXPECT_EQ(l1_error(*pred, opt), target);
      EXPECT_TRUE(check_conservation(g, *pred));
    }
  }
}

TEST(Generators, UnreachableTargetIsReported) {
  // The only edge is s->a: no path reaches t and there is no cycle.
  const FlowNetwork g(3, {{0, 1}}, 0, 2, {1});
  Rng rng(1);
  EXPECT_FALSE(
      synthesize_prediction(g, FlowAssignment::zero(1), 3, rng).has_value());
}

TEST(Generators, RandomPredictionsConserve) {
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const FlowNetwork g = random_network(rng, {});
    ASSERT_TRUE(check_conservation(g, random_conserving_prediction(g, rng)));
  }
}

TEST(ScalingExperiment, ZeroTargetIsFree) {
  ScalingOptions options;
  options.ladder = {0};
  options.trials = 3;
  const ScalingReport r =
      exp_warmstart_scaling(lattice20_network(), "lattice20", options);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const ScalingRow& row : r.rows) {
    EXPECT_EQ(row.repair_rounds, 0);
    EXPECT_EQ(row.step2_augmentations, 0);
    EXPECT_EQ(row.status, TrialStatus::kOk);
  }
}

TEST(ScalingExperiment, RowsSatisfyBoundsAndLinearEnvelope) {
  for (RepairVariant v : {RepairVariant::kCancel, RepairVariant::kCirculation}) {
    ScalingOptions options;
    options.trials = 10;
    options.warm.variant = v;
    const ScalingReport r =
        exp_warmstart_scaling(lattice20_network(), "lattice20", options);
    EXPECT_EQ(r.failures, 0);
    EXPECT_EQ(r.skipped, 0);
    for (const ScalingRow& row : r.rows) {
      EXPECT_LE(row.step2_units, row.eta + row.delta);
      // Units moved in both steps are at most 3 eta.
      EXPECT_LE(row.repair_units + row.step2_units, 3 * row.eta);
    }
  }
}

TEST(ScalingExperiment, CsvIsReproducible) {
  ScalingOptions options;
  options.trials = 4;
  options.seed = 77;
  const FlowNetwork g = lattice20_network();
  const std::string a = exp_warmstart_scaling(g, "lattice20", options).to_csv();
  const std::string b = exp_warmstart_scaling(g, "lattice20", options).to_csv();
  EXPECT_EQ(strip_wall_time(a), strip_wall_time(b));
  EXPECT_EQ(a.rfind("# warmflow-csv v1 experiment=scaling\n", 0), 0u);
}

TEST(ExactnessExperiment, NoMismatches) {
  ExactnessOptions options;
  options.trials = 200;
  const ExactnessReport r = exp_learner_exactness(options);
  EXPECT_EQ(r.failures, 0);
  int64_t median_checks = 0;
  for (const ExactnessRow& row : r.rows) {
    if (row.median_ok.has_value()) {
      ++median_checks;
      EXPECT_TRUE(*row.median_ok);
    }
    if (row.samples == 1) EXPECT_EQ(row.objective, Rational(0));
  }
  EXPECT_EQ(median_checks, 25);
}

TEST(GeneralizationExperiment, SingletonSupportHasZeroGap) {
  const FlowNetwork g(2, {{0, 1}}, 0, 1, {0});
  const CapacityDistribution d(FiniteSupport{{{2}}, {Rational(1)}}, 2);
  GeneralizationOptions options;
  options.reps = 3;
  options.k_override = 1;
  const GeneralizationReport r = exp_generalization(g, d, "single", options);
  for (const GeneralizationRow& row : r.rows) {
    EXPECT_EQ(row.gap, Rational(0));
    EXPECT_EQ(row.cost_learned, Rational(0));
  }
  EXPECT_EQ(r.optimal_prediction, FlowAssignment({2}));
}

TEST(GeneralizationExperiment, TwoPointSupportAnyMixedSampleIsOptimal) {
  // Support {1, 3} with equal mass: every f in [1, 3] costs 1.
  const FlowNetwork g(2, {{0, 1}}, 0, 1, {0});
  const CapacityDistribution d(
      FiniteSupport{{{1}, {3}}, {Rational(1, 2), Rational(1, 2)}}, 3);
  const std::vector<FlowAssignment> optima = {FlowAssignment({1}),
                                              FlowAssignment({3})};
  for (int64_t a = 1; a <= 4; ++a) {
    for (int64_t b = 1; b <= 4; ++b) {
      const std::vector<int64_t> weights = {a, b};
      const LearnResult r = learn_from_optima(g, optima, weights);
      EXPECT_EQ(expected_cost(d, r.prediction, optima), Rational(1));
    }
  }
  GeneralizationOptions options;
  options.reps = 10;
  options.k_override = 6;
  const GeneralizationReport r = exp_generalization(g, d, "two", options);
  EXPECT_EQ(r.failures, 0);
}

TEST(GeneralizationExperiment, DefaultInstanceAtFormulaAndCap) {
  const GeneralizationInstance inst = default_generalization_instance();
  GeneralizationOptions options;
  options.reps = 5;
  const GeneralizationReport r =
      exp_generalization(inst.network, inst.distribution, "default6", options);
  EXPECT_LT(r.k_formula, options.k_cap);
  ASSERT_EQ(r.rows.size(), 10u);
  EXPECT_EQ(r.rows.front().k, r.k_formula);
  EXPECT_EQ(r.rows.back().k, options.k_cap);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.failures, 0);
}

TEST(GeneralizationExperiment, RejectsGenerativeDistribution) {
  const FlowNetwork g(2, {{0, 1}}, 0, 1, {0});
  const CapacityDistribution d(IidUniform{{0}, {2}}, 2);
  EXPECT_THROW(exp_generalization(g, d, "u", {}), UnsupportedError);
}

}  // namespace
}  // namespace warmflow
