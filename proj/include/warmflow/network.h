#ifndef WARMFLOW_NETWORK_H_
#define WARMFLOW_NETWORK_H_

#include <cstdint>
#include <span>
#include <vector>

namespace warmflow {

using NodeId = int32_t;
using EdgeIndex = int32_t;

struct Edge {
  NodeId tail;
  NodeId head;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed multigraph with integral capacities and distinguished source and
// sink. The position of an edge in `edges()` is its identity: every
// per-edge vector in the library is indexed the same way. Parallel and
// antiparallel edges are allowed; self-loops are not.
class FlowNetwork {
 public:
  // Throws InputError when any structural invariant is violated.
  FlowNetwork(int32_t node_count, std::vector<Edge> edges, NodeId source,
              NodeId sink, std::vector<int64_t> capacities);

  int32_t node_count() const { return node_count_; }
  int32_t edge_count() const { return static_cast<int32_t>(edges_.size()); }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  const std::vector<int64_t>& capacities() const { return capacities_; }
  int64_t capacity(EdgeIndex e) const { return capacities_[e]; }
  int64_t max_capacity() const;

  // Same topology and terminals, different capacity vector.
  FlowNetwork with_capacities(std::vector<int64_t> capacities) const;

  friend bool operator==(const FlowNetwork&, const FlowNetwork&) = default;

 private:
  int32_t node_count_;
  std::vector<Edge> edges_;
  NodeId source_;
  NodeId sink_;
  std::vector<int64_t> capacities_;
};

// Nonnegative integral value per edge. Capacity feasibility is deliberately
// not part of the type: predictions routinely exceed capacities.
class FlowAssignment {
 public:
  FlowAssignment() = default;
  explicit FlowAssignment(std::vector<int64_t> values);
  static FlowAssignment zero(int32_t edge_count) {
    return FlowAssignment(std::vector<int64_t>(edge_count, 0));
  }

  int32_t size() const { return static_cast<int32_t>(values_.size()); }
  int64_t operator[](EdgeIndex e) const { return values_[e]; }
  const std::vector<int64_t>& values() const { return values_; }

  friend bool operator==(const FlowAssignment&,
                         const FlowAssignment&) = default;

 private:
  std::vector<int64_t> values_;
};

struct FlowMember {
  std::vector<EdgeIndex> edges;  // in traversal order
  int64_t multiplicity;
};

// Paths run source to sink; cycles are closed and simple.
struct FlowDecomposition {
  std::vector<FlowMember> paths;
  std::vector<FlowMember> cycles;

  std::size_t size() const { return paths.size() + cycles.size(); }
};

// Net flow into each node (inflow - outflow).
std::vector<int64_t> node_balances(const FlowNetwork& network,
                                   const FlowAssignment& f);

bool check_conservation(const FlowNetwork& network, const FlowAssignment& f);

// Net outflow of the source: out-edges minus in-edges.
int64_t flow_value(const FlowNetwork& network, const FlowAssignment& f);

int64_t l1_error(const FlowAssignment& f, const FlowAssignment& g);

// Sum over edges of max(f(e) - c(e), 0).
int64_t violation_delta(const FlowNetwork& network, const FlowAssignment& f);

bool is_feasible(const FlowNetwork& network, const FlowAssignment& f);

// Closes f into a circulation with a virtual sink-to-source edge carrying
// the flow value, then peels cycles, starting from the source. Cycles that
// use the virtual edge come back as source-sink paths. Throws InputError if
// f does not conserve or has a negative value.
FlowDecomposition decompose(const FlowNetwork& network,
                            const FlowAssignment& f);

FlowAssignment reconstruct(const FlowNetwork& network,
                           const FlowDecomposition& decomposition);

}  // namespace warmflow

#endif  // WARMFLOW_NETWORK_H_
