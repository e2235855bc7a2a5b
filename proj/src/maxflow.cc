#include "warmflow/maxflow.h"

#include <algorithm>
#include <deque>
#include <string>

#include "warmflow/checked.h"
#include "warmflow/errors.h"

namespace warmflow {

int64_t ResidualNetwork::pair_capacity(NodeId u, NodeId v) const {
  int64_t total = 0;
  for (const ResidualArc& arc : arcs_) {
    if (arc.tail == u && arc.head == v) {
      total = checked_add(total, arc.residual);
    }
  }
  return total;
}

bool ResidualNetwork::has_augmenting_path() const {
  std::vector<std::vector<NodeId>> adjacency(node_count_);
  for (const ResidualArc& arc : arcs_) {
    if (arc.residual > 0) adjacency[arc.tail].push_back(arc.head);
  }
  std::vector<bool> seen(node_count_, false);
  std::deque<NodeId> queue = {source_};
  seen[source_] = true;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (v == sink_) return true;
    for (NodeId w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return false;
}

ResidualNetwork residual(const FlowNetwork& network, const FlowAssignment& f) {
  if (f.size() != network.edge_count()) {
    throw InputError("residual: flow length differs from edge count");
  }
  if (!is_feasible(network, f)) {
    throw InputError("residual: flow exceeds a capacity");
  }
  if (!check_conservation(network, f)) {
    throw InputError("residual: flow violates conservation");
  }
  std::vector<ResidualArc> arcs;
  arcs.reserve(2 * network.edge_count());
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    const Edge& edge = network.edge(e);
    arcs.push_back({edge.tail, edge.head, network.capacity(e) - f[e], e, true});
    arcs.push_back({edge.head, edge.tail, f[e], e, false});
  }
  return ResidualNetwork(network.node_count(), network.source(),
                         network.sink(), std::move(arcs));
}

WorkTask augment_to_optimum(const FlowNetwork& network,
                            std::vector<int64_t>& flow, SolveStats& stats) {
  const int32_t n = network.node_count();
  const int32_t m = network.edge_count();
  std::vector<NodeId> head(2 * m);
  std::vector<int64_t> cap(2 * m);
  for (EdgeIndex e = 0; e < m; ++e) {
    const Edge& edge = network.edge(e);
    head[2 * e] = edge.head;
    head[2 * e + 1] = edge.tail;
    cap[2 * e] = network.capacity(e) - flow[e];
    cap[2 * e + 1] = flow[e];
  }
  std::vector<std::vector<int32_t>> adjacency(n);
  for (EdgeIndex e = 0; e < m; ++e) {
    adjacency[network.edge(e).tail].push_back(2 * e);
    adjacency[network.edge(e).head].push_back(2 * e + 1);
  }
  for (auto& arcs : adjacency) {
    std::sort(arcs.begin(), arcs.end(), [&](int32_t a, int32_t b) {
      return head[a] != head[b] ? head[a] < head[b] : a < b;
    });
  }

  const NodeId s = network.source();
  const NodeId t = network.sink();
  std::vector<int32_t> parent_arc(n);
  std::deque<NodeId> queue;
  while (true) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    queue.assign(1, s);
    bool found = false;
    while (!queue.empty() && !found) {
      const NodeId v = queue.front();
      queue.pop_front();
      for (int32_t a : adjacency[v]) {
        ++stats.arcs_scanned;
        co_yield ArcScan{};
        const NodeId w = head[a];
        if (cap[a] > 0 && w != s && parent_arc[w] < 0) {
          parent_arc[w] = a;
          if (w == t) {
            found = true;
            break;
          }
          queue.push_back(w);
        }
      }
    }
    if (!found) break;

    int64_t bottleneck = INT64_MAX;
    for (NodeId v = t; v != s; v = head[parent_arc[v] ^ 1]) {
      bottleneck = std::min(bottleneck, cap[parent_arc[v]]);
    }
    for (NodeId v = t; v != s; v = head[parent_arc[v] ^ 1]) {
      cap[parent_arc[v]] -= bottleneck;
      cap[parent_arc[v] ^ 1] += bottleneck;
    }
    ++stats.augmentation_count;
    stats.units_pushed = checked_add(stats.units_pushed, bottleneck);
  }
  for (EdgeIndex e = 0; e < m; ++e) flow[e] = cap[2 * e + 1];
}

MaxFlowResult max_flow_from(const FlowNetwork& network,
                            const FlowAssignment& start) {
  if (start.size() != network.edge_count()) {
    throw InputError("max_flow_from: start flow length differs");
  }
  if (!is_feasible(network, start)) {
    throw InputError("max_flow_from: start flow exceeds a capacity");
  }
  if (!check_conservation(network, start)) {
    throw InputError("max_flow_from: start flow violates conservation");
  }
  std::vector<int64_t> flow = start.values();
  SolveStats stats;
  augment_to_optimum(network, flow, stats).run_to_completion();
  return {FlowAssignment(std::move(flow)), stats};
}

int64_t min_cut_value_bruteforce(const FlowNetwork& network) {
  const int32_t n = network.node_count();
  if (n > kMaxBruteForceNodes) {
    throw RefusalError("min_cut_value_bruteforce: " + std::to_string(n) +
                       " nodes exceeds the enumeration limit of " +
                       std::to_string(kMaxBruteForceNodes));
  }
  std::vector<NodeId> interior;
  for (NodeId v = 0; v < n; ++v) {
    if (v != network.source() && v != network.sink()) interior.push_back(v);
  }
  std::vector<bool> source_side(n);
  int64_t best = INT64_MAX;
  const uint64_t subsets = uint64_t{1} << interior.size();
  for (uint64_t mask = 0; mask < subsets; ++mask) {
    std::fill(source_side.begin(), source_side.end(), false);
    source_side[network.source()] = true;
    for (std::size_t i = 0; i < interior.size(); ++i) {
      if (mask >> i & 1) source_side[interior[i]] = true;
    }
    int64_t cut = 0;
    for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
      const Edge& edge = network.edge(e);
      if (source_side[edge.tail] && !source_side[edge.head]) {
        cut = checked_add(cut, network.capacity(e));
      }
    }
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace warmflow
