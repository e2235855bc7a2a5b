#include "warmflow/oracles.h"

#include <algorithm>

#include "warmflow/checked.h"
#include "warmflow/errors.h"

namespace warmflow {

namespace {

int64_t weight_at(std::span<const int64_t> weights, std::size_t i) {
  return weights.empty() ? 1 : weights[i];
}

}  // namespace

std::vector<int64_t> sample_box(int32_t edge_count,
                                std::span<const FlowAssignment> optima,
                                int64_t slack) {
  std::vector<int64_t> box(edge_count, 0);
  for (const FlowAssignment& f : optima) {
    for (EdgeIndex e = 0; e < edge_count; ++e) box[e] = std::max(box[e], f[e]);
  }
  for (int64_t& b : box) b = checked_add(b, slack);
  return box;
}

BruteForceLearnResult brute_force_learn(
    const FlowNetwork& network, std::span<const FlowAssignment> optima,
    std::span<const int64_t> weights, std::span<const int64_t> box,
    int64_t max_points) {
  const int32_t m = network.edge_count();
  if (optima.empty()) throw InputError("brute_force_learn needs samples");
  if (!weights.empty() && weights.size() != optima.size()) {
    throw InputError("weights and optima differ in count");
  }
  if (box.size() != static_cast<std::size_t>(m)) {
    throw InputError("box length differs from the edge count");
  }
  int64_t points = 1;
  for (int64_t b : box) {
    if (b < 0) throw InputError("negative box bound");
    points = checked_mul(points, b + 1);
    if (points > max_points) {
      throw RefusalError("brute_force_learn: box exceeds " +
                         std::to_string(max_points) + " assignments");
    }
  }
  int64_t total_weight = 0;
  for (std::size_t i = 0; i < optima.size(); ++i) {
    if (weight_at(weights, i) <= 0) throw InputError("weights must be positive");
    total_weight = checked_add(total_weight, weight_at(weights, i));
  }

  BruteForceLearnResult result;
  int64_t best = INT64_MAX;
  std::vector<int64_t> f(m, 0);
  std::vector<int64_t> balance(network.node_count(), 0);
  auto conserving = [&] {
    std::fill(balance.begin(), balance.end(), 0);
    for (EdgeIndex e = 0; e < m; ++e) {
      balance[network.edge(e).tail] -= f[e];
      balance[network.edge(e).head] += f[e];
    }
    for (NodeId v = 0; v < network.node_count(); ++v) {
      if (v != network.source() && v != network.sink() && balance[v] != 0) {
        return false;
      }
    }
    return true;
  };
  while (true) {
    if (conserving()) {
      ++result.candidates;
      int64_t cost = 0;
      for (std::size_t i = 0; i < optima.size(); ++i) {
        int64_t distance = 0;
        for (EdgeIndex e = 0; e < m; ++e) {
          distance += std::abs(f[e] - optima[i][e]);
        }
        cost = checked_add(cost, checked_mul(weight_at(weights, i), distance));
      }
      if (cost < best) {
        best = cost;
        result.argmin = FlowAssignment(f);
      }
    }
    // Odometer increment over the box.
    EdgeIndex e = 0;
    while (e < m && f[e] == box[e]) f[e++] = 0;
    if (e == m) break;
    ++f[e];
  }
  result.objective = Rational(best, total_weight);
  return result;
}

bool is_weighted_median(std::span<const int64_t> values,
                        std::span<const int64_t> weights, int64_t x) {
  int64_t below = 0;
  int64_t above = 0;
  int64_t total = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int64_t w = weight_at(weights, i);
    total += w;
    if (values[i] < x) below += w;
    if (values[i] > x) above += w;
  }
  return 2 * below <= total && 2 * above <= total;
}

}  // namespace warmflow
