#ifndef WARMFLOW_ORACLES_H_
#define WARMFLOW_ORACLES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "warmflow/network.h"
#include "warmflow/rational.h"

namespace warmflow {

// Reference implementations used to cross-check the fast paths. They share
// no code with the solvers beyond the network types.

struct BruteForceLearnResult {
  Rational objective;
  FlowAssignment argmin;  // first minimizer in enumeration order
  int64_t candidates = 0;  // conserving flows examined
};

// Minimum of sum_i w_i ||f - optima_i||_1 / sum_i w_i over every integral
// conserving f with 0 <= f(e) <= box[e], by exhaustive enumeration. Refuses
// (RefusalError) when the box holds more than `max_points` assignments.
inline constexpr int64_t kMaxBruteForcePoints = 5'000'000;
BruteForceLearnResult brute_force_learn(
    const FlowNetwork& network, std::span<const FlowAssignment> optima,
    std::span<const int64_t> weights, std::span<const int64_t> box,
    int64_t max_points = kMaxBruteForcePoints);

// Per-edge maximum of the optima, optionally widened by `slack`.
std::vector<int64_t> sample_box(int32_t edge_count,
                                std::span<const FlowAssignment> optima,
                                int64_t slack = 0);

// Whether x minimizes sum_i w_i |x - values_i|: the weight strictly below x
// and strictly above x are each at most half the total.
bool is_weighted_median(std::span<const int64_t> values,
                        std::span<const int64_t> weights, int64_t x);

}  // namespace warmflow

#endif  // WARMFLOW_ORACLES_H_
