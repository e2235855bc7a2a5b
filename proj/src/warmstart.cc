#include "warmflow/warmstart.h"

#include <algorithm>
#include <utility>

#include "warmflow/checked.h"
#include "warmflow/errors.h"

namespace warmflow {
namespace {

void require_conserving(const FlowNetwork& network,
                        const FlowAssignment& prediction) {
  if (prediction.size() != network.edge_count()) {
    throw InputError("prediction length differs from edge count");
  }
  if (!check_conservation(network, prediction)) {
    throw InputError("prediction violates flow conservation");
  }
}

// Depth-first searches on the positive-flow support, used to locate a cycle
// or terminal-to-terminal path through a violating edge.
class SupportSearch {
 public:
  SupportSearch(const FlowNetwork& network, const std::vector<int64_t>& flow)
      : network_(network),
        flow_(flow),
        out_(network.node_count()),
        in_(network.node_count()),
        stamp_(network.node_count(), 0),
        parent_(network.node_count(), -1),
        target_(network.node_count(), 0) {
    for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
      out_[network.edge(e).tail].push_back(e);
      in_[network.edge(e).head].push_back(e);
    }
  }

  // Marks the nodes at which the next search stops.
  void clear_targets() { std::fill(target_.begin(), target_.end(), 0); }
  void add_target(NodeId v) { target_[v] = 1; }

  // Searches from `start` along positive edges (forward: tail to head;
  // otherwise head to tail) until a target node is reached. Afterwards
  // reached() is that node and path() lists the edges walked, ordered from
  // `start` outward. Smallest edge index is tried first.
  WorkTask search(NodeId start, bool forward) {
    ++generation_;
    path_.clear();
    reached_ = -1;
    stamp_[start] = generation_;
    parent_[start] = -1;
    if (target_[start]) {
      reached_ = start;
      co_return;
    }
    const auto& adjacency = forward ? out_ : in_;
    std::vector<std::pair<NodeId, std::size_t>> stack = {{start, 0}};
    while (!stack.empty() && reached_ < 0) {
      auto& [v, next] = stack.back();
      if (next == adjacency[v].size()) {
        stack.pop_back();
        continue;
      }
      const EdgeIndex e = adjacency[v][next++];
      co_yield ArcScan{};
      if (flow_[e] == 0) continue;
      const Edge& edge = network_.edge(e);
      const NodeId w = forward ? edge.head : edge.tail;
      if (stamp_[w] == generation_) continue;
      stamp_[w] = generation_;
      parent_[w] = e;
      if (target_[w]) {
        reached_ = w;
        break;
      }
      stack.emplace_back(w, 0);
    }
    if (reached_ < 0) co_return;
    for (NodeId w = reached_; parent_[w] >= 0;) {
      const EdgeIndex e = parent_[w];
      path_.push_back(e);
      const Edge& edge = network_.edge(e);
      w = forward ? edge.tail : edge.head;
    }
    std::reverse(path_.begin(), path_.end());
  }

  NodeId reached() const { return reached_; }
  const std::vector<EdgeIndex>& path() const { return path_; }

 private:
  const FlowNetwork& network_;
  const std::vector<int64_t>& flow_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
  std::vector<int32_t> stamp_;
  std::vector<EdgeIndex> parent_;
  std::vector<char> target_;
  int32_t generation_ = 0;
  NodeId reached_ = -1;
  std::vector<EdgeIndex> path_;
};

}  // namespace

const char* to_string(RepairVariant variant) {
  switch (variant) {
    case RepairVariant::kCancel:
      return "cancel";
    case RepairVariant::kCirculation:
      return "circulation";
  }
  return "?";
}

RepairVariant parse_repair_variant(const std::string& text) {
  if (text == "cancel") return RepairVariant::kCancel;
  if (text == "circulation") return RepairVariant::kCirculation;
  throw InputError("unknown repair variant '" + text +
                   "' (expected cancel or circulation)");
}

const char* to_string(RaceWinner winner) {
  return winner == RaceWinner::kWarm ? "warm" : "cold";
}

WorkTask cancel_repair_task(const FlowNetwork& network,
                            std::vector<int64_t>& flow, bool strict_units,
                            WarmStartReport& report) {
  report.variant = RepairVariant::kCancel;
  report.delta = violation_delta(network, FlowAssignment(flow));
  SupportSearch search(network, flow);
  const NodeId s = network.source();
  const NodeId t = network.sink();
  std::vector<int32_t> on_forward(network.node_count(), -1);
  std::vector<EdgeIndex> structure;

  // Edges before the cursor never violate again: cancelling only lowers flow.
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    ++report.repair_arcs_scanned;
    co_yield ArcScan{};
    while (flow[e] > network.capacity(e)) {
      const NodeId u = network.edge(e).tail;
      const NodeId v = network.edge(e).head;

      // Forward from v to u (closing a cycle) or to a terminal.
      search.clear_targets();
      search.add_target(u);
      search.add_target(s);
      search.add_target(t);
      for (WorkTask sub = search.search(v, /*forward=*/true); sub.step();) {
        ++report.repair_arcs_scanned;
        co_yield ArcScan{};
      }
      if (search.reached() < 0) {
        throw InternalError("cancel repair: no forward continuation");
      }
      structure.assign(1, e);
      structure.insert(structure.end(), search.path().begin(),
                       search.path().end());

      if (search.reached() != u) {
        // Backward from u to a terminal or to a node of the forward walk;
        // the latter closes a cycle through e.
        const std::vector<EdgeIndex> forward_path = search.path();
        std::vector<NodeId> forward_nodes = {v};
        for (EdgeIndex f : forward_path) {
          forward_nodes.push_back(network.edge(f).head);
        }
        search.clear_targets();
        search.add_target(s);
        search.add_target(t);
        for (std::size_t i = 0; i < forward_nodes.size(); ++i) {
          search.add_target(forward_nodes[i]);
          on_forward[forward_nodes[i]] = static_cast<int32_t>(i);
        }
        for (WorkTask sub = search.search(u, /*forward=*/false); sub.step();) {
          ++report.repair_arcs_scanned;
          co_yield ArcScan{};
        }
        const NodeId y = search.reached();
        if (y < 0) {
          throw InternalError("cancel repair: no backward continuation");
        }
        structure.assign(search.path().begin(), search.path().end());
        structure.push_back(e);
        if (on_forward[y] >= 0) {
          structure.insert(structure.end(), forward_path.begin(),
                           forward_path.begin() + on_forward[y]);
        } else {
          structure.insert(structure.end(), forward_path.begin(),
                           forward_path.end());
        }
        for (NodeId w : forward_nodes) on_forward[w] = -1;
      }

      int64_t amount = strict_units ? 1 : flow[e] - network.capacity(e);
      for (EdgeIndex f : structure) amount = std::min(amount, flow[f]);
      for (EdgeIndex f : structure) flow[f] -= amount;
      ++report.repair_rounds;
      report.repair_units = checked_add(report.repair_units, amount);
    }
  }
}

WorkTask circulation_repair_task(const FlowNetwork& network,
                                 std::vector<int64_t>& flow,
                                 WarmStartReport& report) {
  report.variant = RepairVariant::kCirculation;
  const int32_t n = network.node_count();
  const int32_t m = network.edge_count();
  const NodeId s = network.source();
  const NodeId t = network.sink();
  const NodeId aux_source = n;
  const NodeId aux_sink = n + 1;

  // Reversed copy of G with c~(v,u) = f(u,v), lowered by the excess on
  // violating edges, plus the return arc (s,t) with capacity delta.
  std::vector<Edge> edges;
  std::vector<int64_t> caps;
  std::vector<int64_t> excess(m, 0);
  int64_t delta = 0;
  bool flow_into_source_or_out_of_sink = false;
  for (EdgeIndex e = 0; e < m; ++e) {
    ++report.repair_arcs_scanned;
    co_yield ArcScan{};
    const Edge& edge = network.edge(e);
    excess[e] = std::max<int64_t>(flow[e] - network.capacity(e), 0);
    delta = checked_add(delta, excess[e]);
    edges.push_back({edge.head, edge.tail});
    caps.push_back(flow[e] - excess[e]);
    if (flow[e] > 0 && (edge.head == s || edge.tail == t)) {
      flow_into_source_or_out_of_sink = true;
    }
  }
  report.delta = delta;
  edges.push_back({s, t});
  caps.push_back(delta);
  // Sink-to-source components of the prediction can only be cancelled
  // with a negative (s,t) return flow; give them an opposite return arc.
  if (flow_into_source_or_out_of_sink) {
    edges.push_back({t, s});
    caps.push_back(delta);
    report.aux_has_reverse_return = true;
  }
  for (EdgeIndex e = 0; e < m; ++e) {
    if (excess[e] == 0) continue;
    edges.push_back({aux_source, network.edge(e).tail});
    caps.push_back(excess[e]);
    edges.push_back({network.edge(e).head, aux_sink});
    caps.push_back(excess[e]);
  }
  const FlowNetwork aux(n + 2, std::move(edges), aux_source, aux_sink,
                        std::move(caps));

  std::vector<int64_t> aux_flow(aux.edge_count(), 0);
  SolveStats aux_stats;
  for (WorkTask sub = augment_to_optimum(aux, aux_flow, aux_stats);
       sub.step();) {
    ++report.repair_arcs_scanned;
    co_yield ArcScan{};
  }
  const int64_t aux_value = flow_value(aux, FlowAssignment(aux_flow));
  report.aux_flow_value = aux_value;
  report.repair_rounds = aux_stats.augmentation_count;
  report.repair_units = aux_stats.units_pushed;
  if (aux_value != delta) {
    throw InternalError("circulation repair: auxiliary max flow " +
                        std::to_string(aux_value) +
                        " does not saturate the lower bounds " +
                        std::to_string(delta));
  }
  // Removing the saturated s~/t~ arcs leaves excess at v and deficit at u;
  // restoring conservation adds excess[e] to the reversed arc.
  for (EdgeIndex e = 0; e < m; ++e) {
    flow[e] -= aux_flow[e] + excess[e];
  }
}

WorkTask warm_start_task(const FlowNetwork& network,
                         std::vector<int64_t>& flow, WarmStartOptions options,
                         WarmStartReport& report) {
  report.value_before_repair = flow_value(network, FlowAssignment(flow));
  WorkTask repair =
      options.variant == RepairVariant::kCancel
          ? cancel_repair_task(network, flow, options.strict_units, report)
          : circulation_repair_task(network, flow, report);
  while (repair.step()) co_yield ArcScan{};
  report.value_after_repair = flow_value(network, FlowAssignment(flow));
  for (WorkTask sub = augment_to_optimum(network, flow, report.step2_stats);
       sub.step();) {
    co_yield ArcScan{};
  }
  report.final_value = flow_value(network, FlowAssignment(flow));
}

RepairResult repair_cancel(const FlowNetwork& network,
                           const FlowAssignment& prediction,
                           bool strict_units) {
  require_conserving(network, prediction);
  std::vector<int64_t> flow = prediction.values();
  WarmStartReport report;
  report.value_before_repair = flow_value(network, prediction);
  cancel_repair_task(network, flow, strict_units, report).run_to_completion();
  FlowAssignment repaired(std::move(flow));
  report.value_after_repair = flow_value(network, repaired);
  return {std::move(repaired), report};
}

RepairResult repair_circulation(const FlowNetwork& network,
                                const FlowAssignment& prediction) {
  require_conserving(network, prediction);
  std::vector<int64_t> flow = prediction.values();
  WarmStartReport report;
  report.value_before_repair = flow_value(network, prediction);
  circulation_repair_task(network, flow, report).run_to_completion();
  FlowAssignment repaired(std::move(flow));
  report.value_after_repair = flow_value(network, repaired);
  return {std::move(repaired), report};
}

WarmStartResult warm_start_max_flow(const FlowNetwork& network,
                                    const FlowAssignment& prediction,
                                    const WarmStartOptions& options) {
  require_conserving(network, prediction);
  std::vector<int64_t> flow = prediction.values();
  WarmStartReport report;
  warm_start_task(network, flow, options, report).run_to_completion();
  return {FlowAssignment(std::move(flow)), report};
}

RaceResult robust_race(const FlowNetwork& network,
                       const FlowAssignment& prediction,
                       const WarmStartOptions& options, int64_t quantum) {
  require_conserving(network, prediction);
  if (quantum < 1) throw InputError("race quantum must be positive");
  std::vector<int64_t> warm_flow = prediction.values();
  std::vector<int64_t> cold_flow(network.edge_count(), 0);
  WarmStartReport warm_report;
  SolveStats cold_stats;
  WorkTask warm = warm_start_task(network, warm_flow, options, warm_report);
  WorkTask cold = augment_to_optimum(network, cold_flow, cold_stats);

  RaceResult result;
  while (true) {
    result.warm_work += warm.run(quantum);
    if (warm.done()) {
      result.winner = RaceWinner::kWarm;
      result.flow = FlowAssignment(std::move(warm_flow));
      return result;
    }
    result.cold_work += cold.run(quantum);
    if (cold.done()) {
      result.winner = RaceWinner::kCold;
      result.flow = FlowAssignment(std::move(cold_flow));
      return result;
    }
  }
}

}  // namespace warmflow
