#ifndef WARMFLOW_SAMPLER_H_
#define WARMFLOW_SAMPLER_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "warmflow/network.h"
#include "warmflow/rational.h"

namespace warmflow {

// Seedable 64-bit generator: std::mt19937_64 seeded through SplitMix64.
// Integer draws use rejection sampling on the raw output, so sequences are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t seed() const { return seed_; }
  uint64_t next() { return engine_(); }
  // Uniform in [lo, hi], inclusive.
  int64_t uniform(int64_t lo, int64_t hi);
  bool coin() { return (next() >> 63) != 0; }
  // Independent child stream; a pure function of (seed, stream).
  Rng split(uint64_t stream) const;

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t x);

struct FiniteSupport {
  std::vector<std::vector<int64_t>> vectors;
  std::vector<Rational> probabilities;

  friend bool operator==(const FiniteSupport&, const FiniteSupport&) = default;
};

// Each coordinate independently uniform in [lo[e], hi[e]].
struct IidUniform {
  std::vector<int64_t> lo;
  std::vector<int64_t> hi;

  friend bool operator==(const IidUniform&, const IidUniform&) = default;
};

// base[e] + uniform(-max_perturbation, max_perturbation), truncated at 0.
struct PerturbedBase {
  std::vector<int64_t> base;
  int64_t max_perturbation = 0;

  friend bool operator==(const PerturbedBase&, const PerturbedBase&) = default;
};

class CapacityDistribution {
 public:
  using Spec = std::variant<FiniteSupport, IidUniform, PerturbedBase>;

  // Throws InputError when probabilities are not positive or do not sum to
  // 1, vectors differ in length, or the support exceeds `c_max`.
  CapacityDistribution(Spec spec, int64_t c_max);

  const Spec& spec() const { return spec_; }
  int64_t c_max() const { return c_max_; }
  int32_t edge_count() const { return edge_count_; }
  bool is_finite() const {
    return std::holds_alternative<FiniteSupport>(spec_);
  }
  const FiniteSupport& finite() const;

  std::vector<int64_t> draw(Rng& rng) const;
  // Finite support only: index of the drawn support vector.
  std::size_t draw_index(Rng& rng) const;

  friend bool operator==(const CapacityDistribution& a,
                         const CapacityDistribution& b) {
    return a.c_max_ == b.c_max_ && a.spec_ == b.spec_;
  }

 private:
  Spec spec_;
  int64_t c_max_;
  int32_t edge_count_ = 0;
  std::vector<int64_t> cumulative_;  // finite support, scaled numerators
  int64_t denominator_ = 1;
};

// E_{c~D} ||f - f*(c)||_1 exactly; `optima[i]` is the maximum flow for
// support vector i. Throws UnsupportedError for generative distributions.
Rational expected_cost(const CapacityDistribution& distribution,
                       const FlowAssignment& f,
                       std::span<const FlowAssignment> optima);

inline constexpr int64_t kDefaultCostEstimateDraws = 10'000;

// Monte Carlo estimate of the expected l1 error for any distribution.
double estimate_cost(const CapacityDistribution& distribution,
                     const FlowNetwork& network, const FlowAssignment& f,
                     Rng& rng, int64_t draws = kDefaultCostEstimateDraws);

// Samples k after which, with probability >= 1 - p, every integral
// conserving f with ||f||_1 <= 2 c_max |E| has sample cost within 1 of its
// expected cost: Hoeffding with range 3 c_max |E| / k and deviation 1,
// union bound over (2 c_max |E| + 1)^|E| candidates:
//   k = ceil(4.5 c_max^2 |E|^2 (|E| ln(2 c_max |E| + 1) + ln(2 / p))).
// Returns 1 when c_max == 0. Throws InputError unless 0 < p < 1 and
// edge_count >= 1, OverflowError when k does not fit in int64.
int64_t hoeffding_sample_count(int64_t c_max, int64_t edge_count, double p);

// Variant with an extra ln|E| factor on the hypothesis term, matching the
// pseudo-dimension route that also covers fractional predictions.
int64_t pseudo_dimension_sample_count(int64_t c_max, int64_t edge_count,
                                      double p);

// 1 / (c_max |E| + 2)^2.
double default_failure_probability(int64_t c_max, int64_t edge_count);

// Text form:
//   c <comment>
//   d finite <edges> <c_max>          then  v <prob> <cap_1> ... <cap_m>
//   d uniform <edges> <c_max>         then  r <lo> <hi>      (one per edge)
//   d perturbed <edges> <c_max> <p>   then  b <cap_1> ... <cap_m>
// Errors are ParseError with 1-based line numbers.
CapacityDistribution parse_distribution(const std::string& text);
std::string serialize_distribution(const CapacityDistribution& distribution);

}  // namespace warmflow

#endif  // WARMFLOW_SAMPLER_H_
