#include <gtest/gtest.h>

#include <random>

#include "test_support.h"
#include "warmflow/errors.h"
#include "warmflow/maxflow.h"

namespace warmflow {
namespace {

using testing_support::diamond;

TEST(MaxFlow, DiamondColdStart) {
  const FlowNetwork g = diamond();
  const MaxFlowResult r = max_flow(g);
  EXPECT_EQ(flow_value(g, r.flow), 4);
  EXPECT_TRUE(is_feasible(g, r.flow));
  EXPECT_EQ(min_cut_value_bruteforce(g), 4);
}

TEST(MaxFlow, DiamondWarmFromNearOptimal) {
  const FlowNetwork g = diamond();
  const MaxFlowResult r = max_flow_from(g, FlowAssignment({2, 1, 1, 2, 1}));
  EXPECT_EQ(flow_value(g, r.flow), 4);
  EXPECT_EQ(r.stats.augmentation_count, 1);
  EXPECT_EQ(r.stats.units_pushed, 1);
}

TEST(MaxFlow, OptimalStartNeedsNoAugmentation) {
  const FlowNetwork g = diamond();
  const FlowAssignment opt = max_flow(g).flow;
  const MaxFlowResult r = max_flow_from(g, opt);
  EXPECT_EQ(r.flow, opt);
  EXPECT_EQ(r.stats.augmentation_count, 0);
}

TEST(MaxFlow, DisconnectedAndZeroCapacity) {
  const FlowNetwork g(3, {{0, 1}}, 0, 2, {5});
  EXPECT_EQ(flow_value(g, max_flow(g).flow), 0);
  const FlowNetwork z(2, {{0, 1}}, 0, 1, {0});
  EXPECT_EQ(flow_value(z, max_flow(z).flow), 0);
}

TEST(MaxFlow, RejectsInfeasibleStart) {
  const FlowNetwork g = diamond();
  EXPECT_THROW(max_flow_from(g, FlowAssignment({3, 0, 3, 0, 0})), InputError);
  EXPECT_THROW(max_flow_from(g, FlowAssignment({1, 0, 0, 0, 0})), InputError);
  EXPECT_THROW(max_flow_from(g, FlowAssignment({1})), InputError);
}

TEST(MaxFlow, LargeCapacitiesStayExact) {
  const int64_t big = int64_t{1} << 61;
  const FlowNetwork g(3, {{0, 1}, {1, 2}, {0, 2}}, 0, 2, {big, big, big});
  EXPECT_EQ(flow_value(g, max_flow(g).flow), 2 * big);
}

TEST(MinCutBruteForce, RefusesLargeNetworks) {
  const FlowNetwork g(kMaxBruteForceNodes + 1, {{0, 1}}, 0, 1, {1});
  EXPECT_THROW(min_cut_value_bruteforce(g), RefusalError);
}

TEST(Residual, PairCapacityMergesParallelAndAntiparallel) {
  // Two parallel s->a edges and one a->s edge.
  const FlowNetwork g(3, {{0, 1}, {0, 1}, {1, 0}, {1, 2}}, 0, 2,
                      {3, 2, 4, 9});
  const FlowAssignment f({1, 2, 1, 2});
  const ResidualNetwork r = residual(g, f);
  // c(s,a) - f(s,a) + f(a,s) = (5 - 3) + 1.
  EXPECT_EQ(r.pair_capacity(0, 1), 3);
  // c(a,s) - f(a,s) + f(s,a) = (4 - 1) + 3.
  EXPECT_EQ(r.pair_capacity(1, 0), 6);
  EXPECT_EQ(r.pair_capacity(1, 2), 7);
  EXPECT_EQ(r.pair_capacity(2, 1), 2);
  EXPECT_EQ(r.forward_arc(1).residual, 0);
  EXPECT_EQ(r.backward_arc(1).residual, 2);
  EXPECT_TRUE(r.has_augmenting_path());
}

TEST(Residual, NoAugmentingPathAtOptimum) {
  const FlowNetwork g = diamond();
  EXPECT_FALSE(residual(g, max_flow(g).flow).has_augmenting_path());
}

TEST(MaxFlowProperty, MatchesIndependentMinCut) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const FlowNetwork g = testing_support::oracle_random_network(gen, 8, 16, 7);
    const MaxFlowResult r = max_flow(g);
    const int64_t cut = testing_support::oracle_min_cut(g);
    ASSERT_TRUE(testing_support::oracle_feasible(g, r.flow.values()));
    ASSERT_EQ(testing_support::oracle_value(g, r.flow.values()), cut)
        << "trial " << trial;
    ASSERT_EQ(min_cut_value_bruteforce(g), cut);
    ASSERT_FALSE(residual(g, r.flow).has_augmenting_path());
    // Each augmentation pushes at least one unit.
    ASSERT_LE(r.stats.augmentation_count, r.stats.units_pushed);
  }
}

TEST(MaxFlowProperty, ResidualPairCapacityMatchesDefinition) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    const FlowNetwork g = testing_support::oracle_random_network(gen, 5, 12, 5);
    const FlowAssignment f = max_flow(g).flow;
    const ResidualNetwork r = residual(g, f);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v = 0; v < g.node_count(); ++v) {
        int64_t expected = 0;
        for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
          if (g.edge(e).tail == u && g.edge(e).head == v) {
            expected += g.capacity(e) - f[e];
          }
          if (g.edge(e).tail == v && g.edge(e).head == u) expected += f[e];
        }
        ASSERT_EQ(r.pair_capacity(u, v), expected);
      }
    }
  }
}

TEST(WorkTask, AugmentCountsEveryArcScan) {
  const FlowNetwork g = diamond();
  std::vector<int64_t> flow(5, 0);
  SolveStats stats;
  WorkTask task = augment_to_optimum(g, flow, stats);
  int64_t steps = 0;
  while (task.step()) ++steps;
  EXPECT_EQ(steps, stats.arcs_scanned);
  EXPECT_EQ(max_flow(g).stats.arcs_scanned, stats.arcs_scanned);
  EXPECT_EQ(flow_value(g, FlowAssignment(flow)), 4);
}

TEST(WorkTask, BudgetedRunsResume) {
  const FlowNetwork g = diamond();
  std::vector<int64_t> flow(5, 0);
  SolveStats stats;
  WorkTask task = augment_to_optimum(g, flow, stats);
  int64_t used = 0;
  while (!task.done()) used += task.run(3);
  EXPECT_EQ(used, stats.arcs_scanned);
  EXPECT_EQ(flow_value(g, FlowAssignment(flow)), 4);
}

}  // namespace
}  // namespace warmflow
