#include <gtest/gtest.h>

#include <random>

#include "test_support.h"
#include "warmflow/checked.h"
#include "warmflow/errors.h"
#include "warmflow/network.h"
#include "warmflow/rational.h"

namespace warmflow {
namespace {

using testing_support::diamond;

TEST(Rational, NormalizesSignAndGcd) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(0, 7), Rational(0));
  EXPECT_EQ(Rational(0, 7).den(), 1);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) - Rational(1, 2), Rational(-1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_THROW(Rational(1, 0), InputError);
  EXPECT_THROW(Rational(1) / Rational(0), InputError);
}

TEST(Rational, TextRoundTrip) {
  EXPECT_EQ(Rational(4, 3).to_string(), "4/3");
  EXPECT_EQ(Rational(-5).to_string(), "-5");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_THROW(Rational::parse("1/"), InputError);
  EXPECT_THROW(Rational::parse("x"), InputError);
  EXPECT_THROW(Rational::parse("1/0"), InputError);
}

TEST(Rational, OverflowIsReported) {
  const Rational big(INT64_MAX);
  EXPECT_THROW(big + Rational(1), OverflowError);
  // Large intermediates that reduce back into range are fine.
  EXPECT_EQ(Rational(INT64_MAX, 3) * Rational(3, INT64_MAX), Rational(1));
}

TEST(Checked, DetectsWrap) {
  EXPECT_THROW(checked_add(INT64_MAX, 1), OverflowError);
  EXPECT_THROW(checked_sub(INT64_MIN, 1), OverflowError);
  EXPECT_THROW(checked_mul(INT64_MAX / 2 + 1, 2), OverflowError);
  EXPECT_EQ(checked_mul(-3, 4), -12);
}

TEST(FlowNetwork, RejectsBrokenInvariants) {
  EXPECT_THROW(FlowNetwork(1, {}, 0, 0, {}), InputError);
  EXPECT_THROW(FlowNetwork(2, {{0, 1}}, 0, 0, {1}), InputError);
  EXPECT_THROW(FlowNetwork(2, {{0, 0}}, 0, 1, {1}), InputError);
  EXPECT_THROW(FlowNetwork(2, {{0, 2}}, 0, 1, {1}), InputError);
  EXPECT_THROW(FlowNetwork(2, {{0, 1}}, 0, 1, {-1}), InputError);
  EXPECT_THROW(FlowNetwork(2, {{0, 1}}, 0, 1, {1, 2}), InputError);
  EXPECT_THROW(FlowNetwork(2, {}, 0, 5, {}), InputError);
  EXPECT_NO_THROW(FlowNetwork(2, {{0, 1}, {0, 1}, {1, 0}}, 0, 1, {1, 1, 1}));
}

TEST(FlowAssignment, RejectsNegativeValues) {
  EXPECT_THROW(FlowAssignment({1, -1}), InputError);
}

TEST(FlowMetrics, DiamondValues) {
  const FlowNetwork g = diamond();
  const FlowAssignment f({2, 1, 1, 2, 1});
  EXPECT_TRUE(check_conservation(g, f));
  EXPECT_TRUE(is_feasible(g, f));
  EXPECT_EQ(flow_value(g, f), 3);
  EXPECT_EQ(violation_delta(g, f), 0);
  const FlowAssignment over({3, 2, 3, 2, 0});
  EXPECT_TRUE(check_conservation(g, over));
  EXPECT_FALSE(is_feasible(g, over));
  EXPECT_EQ(violation_delta(g, over), 2);
  EXPECT_EQ(l1_error(f, over), 1 + 1 + 2 + 0 + 1);
  EXPECT_FALSE(check_conservation(g, FlowAssignment({1, 0, 0, 0, 0})));
}

TEST(FlowMetrics, ValueIsNetOutflowOfSource) {
  // s->a, a->s, a->t with a cycle s->a->s of 2 units.
  const FlowNetwork g(3, {{0, 1}, {1, 0}, {1, 2}}, 0, 2, {9, 9, 9});
  EXPECT_EQ(flow_value(g, FlowAssignment({3, 2, 1})), 1);
}

TEST(FlowMetrics, LengthMismatchIsInputError) {
  EXPECT_THROW(flow_value(diamond(), FlowAssignment({1})), InputError);
  EXPECT_THROW(l1_error(FlowAssignment({1}), FlowAssignment({1, 2})),
               InputError);
}

TEST(Decompose, DiamondFlow) {
  const FlowNetwork g = diamond();
  const FlowAssignment f({2, 1, 1, 2, 1});
  const FlowDecomposition d = decompose(g, f);
  EXPECT_TRUE(d.cycles.empty());
  int64_t total = 0;
  for (const FlowMember& p : d.paths) total += p.multiplicity;
  EXPECT_EQ(total, 3);
  EXPECT_EQ(reconstruct(g, d), f);
}

TEST(Decompose, SeparatesCycles) {
  // s->t plus a cycle a->b->a off the path.
  const FlowNetwork g(4, {{0, 3}, {1, 2}, {2, 1}}, 0, 3, {1, 1, 1});
  const FlowAssignment f({2, 5, 5});
  const FlowDecomposition d = decompose(g, f);
  ASSERT_EQ(d.paths.size(), 1u);
  ASSERT_EQ(d.cycles.size(), 1u);
  EXPECT_EQ(d.cycles[0].multiplicity, 5);
  EXPECT_EQ(reconstruct(g, d), f);
}

TEST(Decompose, RejectsNonConservingAndNegativeValue) {
  EXPECT_THROW(decompose(diamond(), FlowAssignment({1, 0, 0, 0, 0})),
               InputError);
  const FlowNetwork back(2, {{1, 0}}, 0, 1, {1});
  EXPECT_THROW(decompose(back, FlowAssignment({1})), InputError);
}

TEST(Decompose, CycleThroughBothTerminals) {
  // s->a->t->b->s: value 0, one cycle, no path.
  const FlowNetwork g(4, {{0, 1}, {1, 3}, {3, 2}, {2, 0}}, 0, 3, {1, 1, 1, 1});
  const FlowDecomposition d = decompose(g, FlowAssignment({2, 2, 2, 2}));
  EXPECT_TRUE(d.paths.empty());
  ASSERT_EQ(d.cycles.size(), 1u);
  EXPECT_EQ(d.cycles[0].multiplicity, 2);
}

TEST(DecomposeProperty, RoundTripOnPathsAndCycles) {
  std::mt19937_64 gen(20240611);
  for (int trial = 0; trial < 1500; ++trial) {
    const FlowNetwork g = testing_support::oracle_random_network(gen, 7, 14, 5);
    const FlowAssignment f =
        testing_support::oracle_path_cycle_flow(g, gen, 5, 4);
    const FlowDecomposition d = decompose(g, f);
    EXPECT_EQ(reconstruct(g, d), f) << "trial " << trial;
    EXPECT_LE(d.size(), static_cast<std::size_t>(g.edge_count()) + 1)
        << "trial " << trial;
    for (const FlowMember& p : d.paths) {
      ASSERT_FALSE(p.edges.empty());
      EXPECT_EQ(g.edge(p.edges.front()).tail, g.source());
      EXPECT_EQ(g.edge(p.edges.back()).head, g.sink());
      EXPECT_GT(p.multiplicity, 0);
    }
    for (const FlowMember& c : d.cycles) {
      ASSERT_FALSE(c.edges.empty());
      EXPECT_EQ(g.edge(c.edges.back()).head, g.edge(c.edges.front()).tail);
      EXPECT_GT(c.multiplicity, 0);
    }
  }
}

TEST(DecomposeProperty, AnyNonNegativeValueFlowDecomposes) {
  std::mt19937_64 gen(31);
  int decomposed = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const FlowNetwork g = testing_support::oracle_random_network(gen, 6, 12, 5);
    // Rejection-sample conserving vectors, including ones with negative value.
    std::vector<int64_t> values(g.edge_count());
    for (auto& v : values) v = static_cast<int64_t>(gen() % 3);
    const FlowAssignment f(values);
    if (!check_conservation(g, f)) continue;
    if (flow_value(g, f) < 0) {
      EXPECT_THROW(decompose(g, f), InputError);
      continue;
    }
    EXPECT_EQ(reconstruct(g, decompose(g, f)), f) << "trial " << trial;
    ++decomposed;
  }
  EXPECT_GT(decomposed, 100);
}

}  // namespace
}  // namespace warmflow
