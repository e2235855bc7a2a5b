#ifndef WARMFLOW_LEARNER_H_
#define WARMFLOW_LEARNER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "warmflow/network.h"
#include "warmflow/rational.h"

namespace warmflow {

// cost(x) = sum_i w_i * |x - x_i| for integer weights w_i > 0. Normalized
// quantities divide by total_weight(); the unweighted case uses w_i = 1, so
// the slope on [x_i, x_{i+1}] is 2i - k.
class PiecewiseLinearCost {
 public:
  struct Segment {
    int64_t start;     // x_i (x_0 = 0)
    int64_t capacity;  // x_{i+1} - x_i; kUnbounded for the last segment
    int64_t slope;     // in units of 1 / total_weight()
  };
  static constexpr int64_t kUnbounded = -1;

  // Throws InputError on an empty value list, negative values, or
  // non-positive weights.
  PiecewiseLinearCost(std::span<const int64_t> values,
                      std::span<const int64_t> weights);

  const std::vector<int64_t>& breakpoints() const { return breakpoints_; }
  const std::vector<int64_t>& weights() const { return weights_; }
  int64_t total_weight() const { return total_weight_; }
  // k + 1 segments; the last one is unbounded with slope +total_weight().
  const std::vector<Segment>& segments() const { return segments_; }
  int64_t max_breakpoint() const { return breakpoints_.back(); }

  // Scaled cost sum_i w_i |x - x_i|, evaluated directly.
  int64_t evaluate(int64_t x) const;
  // Scaled cost accumulated along the segments from cost(0).
  int64_t evaluate_by_segments(int64_t x) const;
  Rational normalized(int64_t x) const {
    return Rational(evaluate(x), total_weight_);
  }

 private:
  std::vector<int64_t> breakpoints_;  // sorted
  std::vector<int64_t> weights_;      // aligned with breakpoints_
  int64_t total_weight_ = 0;
  std::vector<Segment> segments_;
};

// Uniform weights.
PiecewiseLinearCost build_cost(std::span<const int64_t> values);
// Rational weights summing to 1, scaled by their common denominator.
PiecewiseLinearCost build_cost(std::span<const int64_t> values,
                               std::span<const Rational> weights);

struct CostArc {
  NodeId tail;
  NodeId head;
  int64_t capacity;
  int64_t cost;
  EdgeIndex origin;  // original edge, or -1 for a return arc
};

// Any-value min-cost flow posed as a min-cost circulation. Segment arcs of
// one original edge are contiguous and in ascending cost; return arcs come
// last.
struct MinCostFlowInstance {
  int32_t node_count = 0;
  NodeId source = 0;
  NodeId sink = 0;
  std::vector<CostArc> arcs;
};

// One parallel arc per bounded, nonempty segment of each edge cost (the
// unbounded last segment has positive slope and is dropped, which boxes
// f(e) <= max breakpoint). Zero-cost return arcs t->s and s->t with
// capacity 2 * c_max * |E| let the circulation carry any flow value.
MinCostFlowInstance reduce_to_mcf(const FlowNetwork& network,
                                  std::span<const PiecewiseLinearCost> costs);

// Negative-cycle canceling from the zero circulation: Bellman-Ford finds a
// negative residual cycle, its bottleneck is pushed, repeat. Returns flow per
// arc. Only strictly negative cycles are cancelled.
std::vector<int64_t> min_cost_flow(const MinCostFlowInstance& instance);

int64_t circulation_cost(const MinCostFlowInstance& instance,
                         std::span<const int64_t> arc_flow);

// Whether the residual graph of `arc_flow` contains a negative-cost cycle.
bool has_negative_residual_cycle(const MinCostFlowInstance& instance,
                                 std::span<const int64_t> arc_flow);

// Maximum flow for each capacity vector, computed concurrently.
std::vector<FlowAssignment> sample_optima(
    const FlowNetwork& network,
    std::span<const std::vector<int64_t>> samples);

struct LearnResult {
  FlowAssignment prediction;
  // Weighted mean l1 distance to the sample optima.
  Rational objective;
  // Cost of the min-cost circulation; plus sum_e cost_e(0) it equals
  // total_weight * objective.
  int64_t circulation_cost = 0;
  int64_t total_weight = 0;
};

// Integral conserving flow minimizing sum_i w_i ||f - optima_i||_1, over flows
// boxed by the per-edge maximum of the optima. `weights` are positive
// integers (multiplicities); empty means all ones.
LearnResult learn_from_optima(const FlowNetwork& network,
                              std::span<const FlowAssignment> optima,
                              std::span<const int64_t> weights = {});

// Uniform weights 1/k over capacity samples.
LearnResult learn_prediction(const FlowNetwork& network,
                             std::span<const std::vector<int64_t>> samples);
// Rational weights summing to 1 (finite-support distributions).
LearnResult learn_prediction(const FlowNetwork& network,
                             std::span<const std::vector<int64_t>> samples,
                             std::span<const Rational> weights);

// Weighted mean l1 error of f against the optima, exactly.
Rational sample_cost(const FlowAssignment& f,
                     std::span<const FlowAssignment> optima,
                     std::span<const int64_t> weights = {});

// Positive integers proportional to `weights`; throws unless the weights are
// positive and sum to 1.
std::vector<int64_t> scale_weights(std::span<const Rational> weights);

}  // namespace warmflow

#endif  // WARMFLOW_LEARNER_H_
