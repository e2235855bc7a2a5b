#ifndef WARMFLOW_MAXFLOW_H_
#define WARMFLOW_MAXFLOW_H_

#include <cstdint>
#include <vector>

#include "warmflow/network.h"
#include "warmflow/work.h"

namespace warmflow {

struct ResidualArc {
  NodeId tail;
  NodeId head;
  int64_t residual;
  EdgeIndex edge;  // original edge this arc derives from
  bool forward;    // true: c(e) - f(e) along e; false: f(e) against e
};

// Residual network kept per original edge: arc 2e is the forward arc of
// edge e, arc 2e+1 its backward arc. Parallel and antiparallel edges
// therefore need no merging; pair_capacity() gives the merged per-node-pair
// view c_f(u,v) = (c(u,v) - f(u,v)) + f(v,u).
class ResidualNetwork {
 public:
  ResidualNetwork(int32_t node_count, NodeId source, NodeId sink,
                  std::vector<ResidualArc> arcs)
      : node_count_(node_count),
        source_(source),
        sink_(sink),
        arcs_(std::move(arcs)) {}

  int32_t node_count() const { return node_count_; }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  const std::vector<ResidualArc>& arcs() const { return arcs_; }
  const ResidualArc& forward_arc(EdgeIndex e) const { return arcs_[2 * e]; }
  const ResidualArc& backward_arc(EdgeIndex e) const {
    return arcs_[2 * e + 1];
  }

  // Total residual capacity over all arcs from u to v.
  int64_t pair_capacity(NodeId u, NodeId v) const;

  // True if some source-to-sink path uses only positive residual arcs.
  bool has_augmenting_path() const;

 private:
  int32_t node_count_;
  NodeId source_;
  NodeId sink_;
  std::vector<ResidualArc> arcs_;
};

// Throws InputError if f exceeds a capacity or breaks conservation.
ResidualNetwork residual(const FlowNetwork& network, const FlowAssignment& f);

struct SolveStats {
  int64_t augmentation_count = 0;
  int64_t units_pushed = 0;
  int64_t arcs_scanned = 0;
};

struct MaxFlowResult {
  FlowAssignment flow;
  SolveStats stats;
};

// Edmonds-Karp from a feasible conserving start flow: breadth-first
// shortest augmenting paths, neighbors expanded in ascending head id, full
// bottleneck pushed per path. Throws InputError for an infeasible start.
MaxFlowResult max_flow_from(const FlowNetwork& network,
                            const FlowAssignment& start);

inline MaxFlowResult max_flow(const FlowNetwork& network) {
  return max_flow_from(network, FlowAssignment::zero(network.edge_count()));
}

// Metered form of max_flow_from. `flow` holds the start flow on entry and
// the maximum flow when the task finishes; `stats` accumulates as it runs.
// The start flow is not validated here.
WorkTask augment_to_optimum(const FlowNetwork& network,
                            std::vector<int64_t>& flow, SolveStats& stats);

// Minimum s-t cut by enumerating every bipartition of the non-terminal
// nodes. Refuses networks with more than kMaxBruteForceNodes nodes.
inline constexpr int32_t kMaxBruteForceNodes = 22;
int64_t min_cut_value_bruteforce(const FlowNetwork& network);

}  // namespace warmflow

#endif  // WARMFLOW_MAXFLOW_H_
