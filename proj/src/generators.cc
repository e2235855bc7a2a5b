#include "warmflow/generators.h"

#include <algorithm>
#include <cstdlib>

#include "warmflow/checked.h"
#include "warmflow/errors.h"

namespace warmflow {

FlowNetwork random_network(Rng& rng, const RandomNetworkOptions& options) {
  if (options.min_nodes < 2 || options.min_nodes > options.max_nodes ||
      options.min_edges < 0 || options.min_edges > options.max_edges ||
      options.max_capacity < 0) {
    throw InputError("invalid random network options");
  }
  const auto n =
      static_cast<int32_t>(rng.uniform(options.min_nodes, options.max_nodes));
  const auto m =
      static_cast<int32_t>(rng.uniform(options.min_edges, options.max_edges));
  std::vector<Edge> edges;
  std::vector<int64_t> caps;
  for (int32_t i = 0; i < m; ++i) {
    const auto tail = static_cast<NodeId>(rng.uniform(0, n - 1));
    auto head = static_cast<NodeId>(rng.uniform(0, n - 2));
    if (head >= tail) ++head;
    edges.push_back({tail, head});
    caps.push_back(rng.uniform(0, options.max_capacity));
  }
  return FlowNetwork(n, std::move(edges), 0, n - 1, std::move(caps));
}

namespace {

// A unit move along edge `edge`: with the edge (+1) or against it (-1).
struct Move {
  EdgeIndex edge;
  int64_t sign;
  NodeId to;
};

struct Adjacency {
  std::vector<std::vector<EdgeIndex>> out;
  std::vector<std::vector<EdgeIndex>> in;

  explicit Adjacency(const FlowNetwork& network)
      : out(network.node_count()), in(network.node_count()) {
    for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
      out[network.edge(e).tail].push_back(e);
      in[network.edge(e).head].push_back(e);
    }
  }
};

// Random simple walk from `start` using moves offered by `options`. Stops at
// `target` (a path) or on revisiting a node (the closed part is returned).
template <class Options>
std::vector<Move> random_structure(int32_t node_count, NodeId start,
                                   NodeId target, Rng& rng,
                                   Options&& options) {
  std::vector<int32_t> position(node_count, -1);
  std::vector<NodeId> nodes{start};
  std::vector<Move> moves;
  position[start] = 0;
  NodeId u = start;
  while (true) {
    const std::vector<Move> choices = options(u);
    if (choices.empty()) return {};
    const Move move = choices[rng.uniform(0, choices.size() - 1)];
    moves.push_back(move);
    if (move.to == target) return moves;
    if (position[move.to] >= 0) {
      moves.erase(moves.begin(), moves.begin() + position[move.to]);
      if (moves.size() == 2 && moves[0].edge == moves[1].edge) return {};
      return moves;
    }
    position[move.to] = static_cast<int32_t>(nodes.size());
    nodes.push_back(move.to);
    u = move.to;
  }
}

}  // namespace

FlowAssignment random_conserving_prediction(const FlowNetwork& network,
                                            Rng& rng, int32_t max_members,
                                            int64_t max_multiplicity) {
  const Adjacency adjacency(network);
  std::vector<int64_t> flow(network.edge_count(), 0);
  auto forward_only = [&](NodeId u) {
    std::vector<Move> moves;
    for (EdgeIndex e : adjacency.out[u]) {
      moves.push_back({e, 1, network.edge(e).head});
    }
    return moves;
  };
  const int64_t members = rng.uniform(0, std::max(0, max_members));
  for (int64_t i = 0; i < members; ++i) {
    const int64_t kind = rng.uniform(0, 5);
    NodeId start;
    NodeId target = -1;
    if (kind <= 2) {
      start = network.source();
      target = network.sink();
    } else if (kind == 3) {
      start = network.sink();
      target = network.source();
    } else {
      start = static_cast<NodeId>(rng.uniform(0, network.node_count() - 1));
    }
    const std::vector<Move> structure = random_structure(
        network.node_count(), start, target, rng, forward_only);
    const int64_t multiplicity = rng.uniform(1, std::max<int64_t>(1, max_multiplicity));
    for (const Move& move : structure) {
      flow[move.edge] = checked_add(flow[move.edge], multiplicity);
    }
  }
  return FlowAssignment(std::move(flow));
}

std::optional<FlowAssignment> synthesize_prediction(
    const FlowNetwork& network, const FlowAssignment& base, int64_t target_eta,
    Rng& rng, int32_t max_attempts) {
  if (base.size() != network.edge_count()) {
    throw InputError("base flow length differs from the edge count");
  }
  if (target_eta < 0) throw InputError("target eta must be nonnegative");
  const Adjacency adjacency(network);
  std::vector<int64_t> flow = base.values();
  // Moves that push flow(e) further from base(e).
  auto diverging = [&](NodeId u) {
    std::vector<Move> moves;
    for (EdgeIndex e : adjacency.out[u]) {
      if (flow[e] >= base[e]) moves.push_back({e, 1, network.edge(e).head});
    }
    for (EdgeIndex e : adjacency.in[u]) {
      if (flow[e] <= base[e] && flow[e] > 0) {
        moves.push_back({e, -1, network.edge(e).tail});
      }
    }
    return moves;
  };
  // Greedy growth can paint itself into a corner where no structure fits
  // the remaining distance; restart from `base` after a run of misses.
  constexpr int32_t kMissesBeforeRestart = 64;
  int64_t eta = 0;
  int32_t failures = 0;
  int32_t misses = 0;
  while (eta < target_eta) {
    if (failures >= max_attempts) return std::nullopt;
    if (misses == kMissesBeforeRestart) {
      flow = base.values();
      eta = 0;
      misses = 0;
    }
    const int64_t kind = rng.uniform(0, 2);
    NodeId start;
    NodeId target = -1;
    if (kind == 0) {
      start = network.source();
      target = network.sink();
    } else if (kind == 1) {
      start = network.sink();
      target = network.source();
    } else {
      start = static_cast<NodeId>(rng.uniform(0, network.node_count() - 1));
    }
    const std::vector<Move> structure =
        random_structure(network.node_count(), start, target, rng, diverging);
    const auto length = static_cast<int64_t>(structure.size());
    if (length == 0 || length > target_eta - eta) {
      ++failures;
      ++misses;
      continue;
    }
    for (const Move& move : structure) flow[move.edge] += move.sign;
    eta += length;
    misses = 0;
  }
  return FlowAssignment(std::move(flow));
}

FlowNetwork lattice20_network() {
  // s = 0, grid cell (r, c) = 1 + 3r + c, t = 10.
  auto cell = [](int r, int c) { return static_cast<NodeId>(1 + 3 * r + c); };
  std::vector<Edge> edges;
  for (int r = 0; r < 3; ++r) edges.push_back({0, cell(r, 0)});
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) edges.push_back({cell(r, c), cell(r, c + 1)});
  }
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 3; ++c) edges.push_back({cell(r, c), cell(r + 1, c)});
  }
  for (int r = 0; r < 3; ++r) edges.push_back({cell(r, 2), 10});
  edges.push_back({cell(1, 1), cell(0, 1)});
  edges.push_back({cell(2, 0), cell(1, 1)});
  std::vector<int64_t> caps;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    caps.push_back(3 + static_cast<int64_t>(7 * e % 5));
  }
  return FlowNetwork(11, std::move(edges), 0, 10, std::move(caps));
}

}  // namespace warmflow
