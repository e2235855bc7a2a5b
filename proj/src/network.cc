#include "warmflow/network.h"

#include <algorithm>
#include <string>

#include "warmflow/checked.h"
#include "warmflow/errors.h"

namespace warmflow {
namespace {

void require_same_length(const FlowNetwork& network, const FlowAssignment& f) {
  if (f.size() != network.edge_count()) {
    throw InputError("flow has " + std::to_string(f.size()) +
                     " values but network has " +
                     std::to_string(network.edge_count()) + " edges");
  }
}

}  // namespace

FlowNetwork::FlowNetwork(int32_t node_count, std::vector<Edge> edges,
                         NodeId source, NodeId sink,
                         std::vector<int64_t> capacities)
    : node_count_(node_count),
      edges_(std::move(edges)),
      source_(source),
      sink_(sink),
      capacities_(std::move(capacities)) {
  if (node_count_ < 2) throw InputError("network needs at least two nodes");
  auto in_range = [this](NodeId v) { return v >= 0 && v < node_count_; };
  if (!in_range(source_) || !in_range(sink_)) {
    throw InputError("terminal node id out of range");
  }
  if (source_ == sink_) throw InputError("source and sink coincide");
  if (capacities_.size() != edges_.size()) {
    throw InputError("capacity vector length differs from edge count");
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (!in_range(edge.tail) || !in_range(edge.head)) {
      throw InputError("edge " + std::to_string(e) + " has node out of range");
    }
    if (edge.tail == edge.head) {
      throw InputError("edge " + std::to_string(e) + " is a self-loop");
    }
    if (capacities_[e] < 0) {
      throw InputError("edge " + std::to_string(e) + " has negative capacity");
    }
  }
}

int64_t FlowNetwork::max_capacity() const {
  int64_t m = 0;
  for (int64_t c : capacities_) m = std::max(m, c);
  return m;
}

FlowNetwork FlowNetwork::with_capacities(std::vector<int64_t> capacities) const {
  return FlowNetwork(node_count_, edges_, source_, sink_,
                     std::move(capacities));
}

FlowAssignment::FlowAssignment(std::vector<int64_t> values)
    : values_(std::move(values)) {
  for (std::size_t e = 0; e < values_.size(); ++e) {
    if (values_[e] < 0) {
      throw InputError("negative flow on edge " + std::to_string(e));
    }
  }
}

std::vector<int64_t> node_balances(const FlowNetwork& network,
                                   const FlowAssignment& f) {
  require_same_length(network, f);
  std::vector<int64_t> balance(network.node_count(), 0);
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    const Edge& edge = network.edge(e);
    balance[edge.head] = checked_add(balance[edge.head], f[e]);
    balance[edge.tail] = checked_sub(balance[edge.tail], f[e]);
  }
  return balance;
}

bool check_conservation(const FlowNetwork& network, const FlowAssignment& f) {
  const std::vector<int64_t> balance = node_balances(network, f);
  for (NodeId v = 0; v < network.node_count(); ++v) {
    if (v == network.source() || v == network.sink()) continue;
    if (balance[v] != 0) return false;
  }
  return true;
}

int64_t flow_value(const FlowNetwork& network, const FlowAssignment& f) {
  require_same_length(network, f);
  int64_t value = 0;
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    const Edge& edge = network.edge(e);
    if (edge.tail == network.source()) value = checked_add(value, f[e]);
    if (edge.head == network.source()) value = checked_sub(value, f[e]);
  }
  return value;
}

int64_t l1_error(const FlowAssignment& f, const FlowAssignment& g) {
  if (f.size() != g.size()) {
    throw InputError("l1_error on flows of different length");
  }
  int64_t total = 0;
  for (EdgeIndex e = 0; e < f.size(); ++e) {
    total = checked_add(total, checked_abs(checked_sub(f[e], g[e])));
  }
  return total;
}

int64_t violation_delta(const FlowNetwork& network, const FlowAssignment& f) {
  require_same_length(network, f);
  int64_t delta = 0;
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    if (f[e] > network.capacity(e)) {
      delta = checked_add(delta, f[e] - network.capacity(e));
    }
  }
  return delta;
}

bool is_feasible(const FlowNetwork& network, const FlowAssignment& f) {
  return violation_delta(network, f) == 0;
}

FlowDecomposition decompose(const FlowNetwork& network,
                            const FlowAssignment& f) {
  if (!check_conservation(network, f)) {
    throw InputError("decompose: flow violates conservation");
  }
  const int64_t value = flow_value(network, f);
  if (value < 0) {
    throw InputError(
        "decompose: negative flow value; sink-to-source components cannot be "
        "expressed as paths and cycles");
  }
  // Close the flow into a circulation with a virtual sink->source edge
  // carrying the value. Cycles through it are the source-sink paths.
  const int32_t n = network.node_count();
  const EdgeIndex m = network.edge_count();
  const EdgeIndex virtual_edge = m;
  std::vector<int64_t> rest = f.values();
  rest.push_back(value);
  std::vector<std::vector<EdgeIndex>> out(n);
  for (EdgeIndex e = 0; e < m; ++e) out[network.edge(e).tail].push_back(e);
  out[network.sink()].push_back(virtual_edge);
  auto head = [&](EdgeIndex e) {
    return e == virtual_edge ? network.source() : network.edge(e).head;
  };
  std::vector<std::size_t> cursor(n, 0);
  auto next_positive = [&](NodeId v) -> EdgeIndex {
    while (cursor[v] < out[v].size() && rest[out[v][cursor[v]]] == 0) {
      ++cursor[v];
    }
    return cursor[v] < out[v].size() ? out[v][cursor[v]] : -1;
  };

  FlowDecomposition result;
  std::vector<int32_t> position(n, -1);
  std::vector<NodeId> walk_nodes;
  std::vector<EdgeIndex> walk_edges;

  auto peel = [&](std::size_t from) {
    std::vector<EdgeIndex> cycle(walk_edges.begin() + from, walk_edges.end());
    int64_t amount = INT64_MAX;
    for (EdgeIndex e : cycle) amount = std::min(amount, rest[e]);
    for (EdgeIndex e : cycle) rest[e] -= amount;
    const auto it = std::find(cycle.begin(), cycle.end(), virtual_edge);
    if (it == cycle.end()) {
      result.cycles.push_back({std::move(cycle), amount});
      return;
    }
    std::vector<EdgeIndex> path(it + 1, cycle.end());
    path.insert(path.end(), cycle.begin(), it);
    result.paths.push_back({std::move(path), amount});
  };

  // Walks until a node repeats and peels that cycle. Conservation of the
  // circulation rules out dead ends.
  auto walk_once = [&](NodeId start) {
    for (NodeId v : walk_nodes) position[v] = -1;
    walk_nodes.assign(1, start);
    walk_edges.clear();
    position[start] = 0;
    NodeId v = start;
    while (true) {
      const EdgeIndex e = next_positive(v);
      if (e < 0) throw InternalError("decompose: dead end in a circulation");
      const NodeId w = head(e);
      walk_edges.push_back(e);
      if (position[w] >= 0) {
        peel(static_cast<std::size_t>(position[w]));
        return;
      }
      position[w] = static_cast<int32_t>(walk_nodes.size());
      walk_nodes.push_back(w);
      v = w;
    }
  };

  while (next_positive(network.source()) >= 0) walk_once(network.source());
  for (NodeId v = 0; v < n; ++v) {
    while (next_positive(v) >= 0) walk_once(v);
  }
  return result;
}

FlowAssignment reconstruct(const FlowNetwork& network,
                           const FlowDecomposition& decomposition) {
  std::vector<int64_t> values(network.edge_count(), 0);
  auto add = [&](const std::vector<FlowMember>& members) {
    for (const FlowMember& m : members) {
      for (EdgeIndex e : m.edges) {
        if (e < 0 || e >= network.edge_count()) {
          throw InputError("decomposition references unknown edge");
        }
        values[e] = checked_add(values[e], m.multiplicity);
      }
    }
  };
  add(decomposition.paths);
  add(decomposition.cycles);
  return FlowAssignment(std::move(values));
}

}  // namespace warmflow
