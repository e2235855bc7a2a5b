#include "warmflow/learner.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "warmflow/checked.h"
#include "warmflow/errors.h"
#include "warmflow/maxflow.h"
#include "warmflow/parallel.h"

namespace warmflow {

PiecewiseLinearCost::PiecewiseLinearCost(std::span<const int64_t> values,
                                         std::span<const int64_t> weights) {
  if (values.empty()) throw InputError("cost needs at least one sample value");
  if (weights.size() != values.size()) {
    throw InputError("cost weights and values differ in length");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  for (std::size_t i : order) {
    if (values[i] < 0) throw InputError("cost breakpoint is negative");
    if (weights[i] <= 0) throw InputError("cost weight is not positive");
    breakpoints_.push_back(values[i]);
    weights_.push_back(weights[i]);
    total_weight_ = checked_add(total_weight_, weights[i]);
  }

  const std::size_t k = breakpoints_.size();
  int64_t below = 0;  // weight of breakpoints left of the segment
  for (std::size_t i = 0; i <= k; ++i) {
    const int64_t start = i == 0 ? 0 : breakpoints_[i - 1];
    const int64_t capacity =
        i == k ? kUnbounded : breakpoints_[i] - start;
    const int64_t slope = checked_sub(below, checked_sub(total_weight_, below));
    if (!segments_.empty() && slope < segments_.back().slope) {
      throw InternalError("cost slopes are not nondecreasing");
    }
    segments_.push_back({start, capacity, slope});
    if (i < k) below = checked_add(below, weights_[i]);
  }
}

int64_t PiecewiseLinearCost::evaluate(int64_t x) const {
  int64_t total = 0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    total = checked_add(
        total,
        checked_mul(weights_[i], checked_abs(checked_sub(x, breakpoints_[i]))));
  }
  return total;
}

int64_t PiecewiseLinearCost::evaluate_by_segments(int64_t x) const {
  int64_t total = evaluate(0);
  for (const Segment& segment : segments_) {
    int64_t used = std::max<int64_t>(0, checked_sub(x, segment.start));
    if (segment.capacity != kUnbounded) used = std::min(used, segment.capacity);
    total = checked_add(total, checked_mul(used, segment.slope));
  }
  return total;
}

PiecewiseLinearCost build_cost(std::span<const int64_t> values) {
  const std::vector<int64_t> ones(values.size(), 1);
  return PiecewiseLinearCost(values, ones);
}

PiecewiseLinearCost build_cost(std::span<const int64_t> values,
                               std::span<const Rational> weights) {
  const std::vector<int64_t> scaled = scale_weights(weights);
  return PiecewiseLinearCost(values, scaled);
}

std::vector<int64_t> scale_weights(std::span<const Rational> weights) {
  if (weights.empty()) throw InputError("no weights given");
  Rational sum = 0;
  int64_t common = 1;
  for (const Rational& w : weights) {
    if (w <= Rational(0)) throw InputError("weights must be positive");
    sum += w;
    common = checked_mul(common / std::gcd(common, w.den()), w.den());
  }
  if (sum != Rational(1)) {
    throw InputError("weights sum to " + sum.to_string() + ", not 1");
  }
  std::vector<int64_t> scaled;
  scaled.reserve(weights.size());
  for (const Rational& w : weights) {
    scaled.push_back(checked_mul(w.num(), common / w.den()));
  }
  return scaled;
}

MinCostFlowInstance reduce_to_mcf(const FlowNetwork& network,
                                  std::span<const PiecewiseLinearCost> costs) {
  if (costs.size() != static_cast<std::size_t>(network.edge_count())) {
    throw InputError("reduce_to_mcf: " + std::to_string(costs.size()) +
                     " costs for " + std::to_string(network.edge_count()) +
                     " edges");
  }
  MinCostFlowInstance instance;
  instance.node_count = network.node_count();
  instance.source = network.source();
  instance.sink = network.sink();
  int64_t c_max = 0;
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    const Edge& edge = network.edge(e);
    const PiecewiseLinearCost& cost = costs[e];
    c_max = std::max(c_max, cost.max_breakpoint());
    for (const auto& segment : cost.segments()) {
      if (segment.capacity == PiecewiseLinearCost::kUnbounded) continue;
      if (segment.capacity == 0) continue;
      instance.arcs.push_back(
          {edge.tail, edge.head, segment.capacity, segment.slope, e});
    }
  }
  const int64_t return_capacity = checked_mul(
      checked_mul(2, c_max), std::max<int64_t>(network.edge_count(), 1));
  instance.arcs.push_back(
      {network.sink(), network.source(), return_capacity, 0, -1});
  instance.arcs.push_back(
      {network.source(), network.sink(), return_capacity, 0, -1});
  return instance;
}

namespace {

struct ResidualView {
  explicit ResidualView(const MinCostFlowInstance& instance,
                        std::span<const int64_t> flow)
      : instance(instance), flow(flow) {}

  std::size_t size() const { return 2 * instance.arcs.size(); }
  int64_t capacity(std::size_t r) const {
    const CostArc& arc = instance.arcs[r / 2];
    return r % 2 == 0 ? arc.capacity - flow[r / 2] : flow[r / 2];
  }
  int64_t cost(std::size_t r) const {
    const int64_t c = instance.arcs[r / 2].cost;
    return r % 2 == 0 ? c : -c;
  }
  NodeId tail(std::size_t r) const {
    const CostArc& arc = instance.arcs[r / 2];
    return r % 2 == 0 ? arc.tail : arc.head;
  }
  NodeId head(std::size_t r) const {
    const CostArc& arc = instance.arcs[r / 2];
    return r % 2 == 0 ? arc.head : arc.tail;
  }

  const MinCostFlowInstance& instance;
  std::span<const int64_t> flow;
};

// Bellman-Ford from a virtual source joined to every node at distance 0.
// Returns the residual arcs of a negative cycle, or nothing.
std::vector<std::size_t> find_negative_cycle(const ResidualView& residual) {
  const int32_t n = residual.instance.node_count;
  std::vector<int64_t> dist(n, 0);
  std::vector<int64_t> pred(n, -1);
  NodeId relaxed = -1;
  for (int32_t round = 0; round < n; ++round) {
    relaxed = -1;
    for (std::size_t r = 0; r < residual.size(); ++r) {
      if (residual.capacity(r) <= 0) continue;
      const NodeId u = residual.tail(r);
      const NodeId v = residual.head(r);
      const int64_t candidate = checked_add(dist[u], residual.cost(r));
      if (candidate < dist[v]) {
        dist[v] = candidate;
        pred[v] = static_cast<int64_t>(r);
        relaxed = v;
      }
    }
    if (relaxed < 0) return {};
  }
  NodeId x = relaxed;
  for (int32_t i = 0; i < n; ++i) {
    if (pred[x] < 0) throw InternalError("negative cycle walk left the tree");
    x = residual.tail(static_cast<std::size_t>(pred[x]));
  }
  std::vector<std::size_t> cycle;
  NodeId v = x;
  do {
    const auto r = static_cast<std::size_t>(pred[v]);
    cycle.push_back(r);
    v = residual.tail(r);
  } while (v != x);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

std::vector<int64_t> min_cost_flow(const MinCostFlowInstance& instance) {
  for (const CostArc& arc : instance.arcs) {
    if (arc.capacity < 0) throw InputError("min_cost_flow: negative capacity");
    if (arc.tail < 0 || arc.tail >= instance.node_count || arc.head < 0 ||
        arc.head >= instance.node_count) {
      throw InputError("min_cost_flow: arc endpoint out of range");
    }
  }
  std::vector<int64_t> flow(instance.arcs.size(), 0);
  while (true) {
    const ResidualView residual(instance, flow);
    const std::vector<std::size_t> cycle = find_negative_cycle(residual);
    if (cycle.empty()) break;
    int64_t bottleneck = INT64_MAX;
    for (std::size_t r : cycle) {
      bottleneck = std::min(bottleneck, residual.capacity(r));
    }
    for (std::size_t r : cycle) {
      flow[r / 2] += r % 2 == 0 ? bottleneck : -bottleneck;
    }
  }
  return flow;
}

int64_t circulation_cost(const MinCostFlowInstance& instance,
                         std::span<const int64_t> arc_flow) {
  int64_t total = 0;
  for (std::size_t a = 0; a < instance.arcs.size(); ++a) {
    total = checked_add(total, checked_mul(arc_flow[a], instance.arcs[a].cost));
  }
  return total;
}

bool has_negative_residual_cycle(const MinCostFlowInstance& instance,
                                 std::span<const int64_t> arc_flow) {
  return !find_negative_cycle(ResidualView(instance, arc_flow)).empty();
}

std::vector<FlowAssignment> sample_optima(
    const FlowNetwork& network,
    std::span<const std::vector<int64_t>> samples) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != static_cast<std::size_t>(network.edge_count())) {
      throw InputError("sample " + std::to_string(i) + " has " +
                       std::to_string(samples[i].size()) +
                       " capacities for " +
                       std::to_string(network.edge_count()) + " edges");
    }
  }
  std::vector<FlowAssignment> optima(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    optima[i] = max_flow(network.with_capacities(samples[i])).flow;
  });
  return optima;
}

LearnResult learn_from_optima(const FlowNetwork& network,
                              std::span<const FlowAssignment> optima,
                              std::span<const int64_t> weights) {
  if (optima.empty()) throw InputError("learning needs at least one sample");
  std::vector<int64_t> w(weights.begin(), weights.end());
  if (w.empty()) w.assign(optima.size(), 1);
  if (w.size() != optima.size()) {
    throw InputError("weights and samples differ in count");
  }
  const int32_t m = network.edge_count();
  int64_t c_max = 0;
  for (const FlowAssignment& f : optima) {
    if (f.size() != m) throw InputError("sample optimum has wrong length");
    for (int64_t v : f.values()) c_max = std::max(c_max, v);
  }

  std::vector<PiecewiseLinearCost> costs;
  costs.reserve(m);
  std::vector<int64_t> column(optima.size());
  for (EdgeIndex e = 0; e < m; ++e) {
    for (std::size_t i = 0; i < optima.size(); ++i) column[i] = optima[i][e];
    costs.emplace_back(column, w);
  }
  const MinCostFlowInstance instance = reduce_to_mcf(network, costs);
  const std::vector<int64_t> arc_flow = min_cost_flow(instance);

  std::vector<int64_t> values(m, 0);
  for (std::size_t a = 0; a < instance.arcs.size(); ++a) {
    const EdgeIndex origin = instance.arcs[a].origin;
    if (origin >= 0) values[origin] = checked_add(values[origin], arc_flow[a]);
  }
  LearnResult result;
  result.prediction = FlowAssignment(std::move(values));
  result.total_weight = costs.empty() ? std::accumulate(w.begin(), w.end(),
                                                        int64_t{0})
                                      : costs.front().total_weight();
  result.circulation_cost = circulation_cost(instance, arc_flow);
  int64_t scaled = 0;
  for (EdgeIndex e = 0; e < m; ++e) {
    scaled = checked_add(scaled, costs[e].evaluate(result.prediction[e]));
  }
  result.objective = Rational(scaled, result.total_weight);

  if (!check_conservation(network, result.prediction)) {
    throw InternalError("learned prediction violates conservation");
  }
  int64_t norm = 0;
  for (int64_t v : result.prediction.values()) norm = checked_add(norm, v);
  if (norm > checked_mul(checked_mul(2, c_max), m)) {
    throw InternalError("learned prediction exceeds the 2 c_max |E| norm bound");
  }
  return result;
}

LearnResult learn_prediction(const FlowNetwork& network,
                             std::span<const std::vector<int64_t>> samples) {
  if (samples.empty()) throw InputError("learning needs at least one sample");
  const std::vector<FlowAssignment> optima = sample_optima(network, samples);
  return learn_from_optima(network, optima);
}

LearnResult learn_prediction(const FlowNetwork& network,
                             std::span<const std::vector<int64_t>> samples,
                             std::span<const Rational> weights) {
  if (samples.empty()) throw InputError("learning needs at least one sample");
  if (weights.size() != samples.size()) {
    throw InputError("weights and samples differ in count");
  }
  const std::vector<int64_t> scaled = scale_weights(weights);
  const std::vector<FlowAssignment> optima = sample_optima(network, samples);
  return learn_from_optima(network, optima, scaled);
}

Rational sample_cost(const FlowAssignment& f,
                     std::span<const FlowAssignment> optima,
                     std::span<const int64_t> weights) {
  if (optima.empty()) throw InputError("sample_cost needs at least one sample");
  if (!weights.empty() && weights.size() != optima.size()) {
    throw InputError("weights and samples differ in count");
  }
  int64_t total = 0;
  int64_t total_weight = 0;
  for (std::size_t i = 0; i < optima.size(); ++i) {
    const int64_t w = weights.empty() ? 1 : weights[i];
    total = checked_add(total, checked_mul(w, l1_error(f, optima[i])));
    total_weight = checked_add(total_weight, w);
  }
  return Rational(total, total_weight);
}

}  // namespace warmflow
