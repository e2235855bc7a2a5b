#ifndef WARMFLOW_GENERATORS_H_
#define WARMFLOW_GENERATORS_H_

#include <cstdint>
#include <optional>

#include "warmflow/network.h"
#include "warmflow/sampler.h"

namespace warmflow {

struct RandomNetworkOptions {
  int32_t min_nodes = 2;
  int32_t max_nodes = 8;
  int32_t min_edges = 1;
  int32_t max_edges = 14;
  int64_t max_capacity = 6;
};

// Source 0, sink n-1, endpoints and capacities uniform. Parallel and
// antiparallel edges occur naturally.
FlowNetwork random_network(Rng& rng, const RandomNetworkOptions& options);

// Sum of up to `max_members` random source-sink paths, sink-source paths and
// cycles of the underlying graph, each with multiplicity in
// [1, max_multiplicity]. Conserving by construction; ignores capacities.
FlowAssignment random_conserving_prediction(const FlowNetwork& network,
                                            Rng& rng, int32_t max_members = 4,
                                            int64_t max_multiplicity = 4);

// Moves `base` away from itself by unit steps along random paths and cycles
// until the l1 distance to `base` is exactly `target_eta`. Every step only
// increases the distance, so the result is exact. Returns nullopt when no
// fitting step is found within the attempt budget (small or acyclic
// graphs).
std::optional<FlowAssignment> synthesize_prediction(
    const FlowNetwork& network, const FlowAssignment& base, int64_t target_eta,
    Rng& rng, int32_t max_attempts = 4000);

// Deterministic 11-node, 20-edge grid network used as the default scaling
// instance.
FlowNetwork lattice20_network();

}  // namespace warmflow

#endif  // WARMFLOW_GENERATORS_H_
