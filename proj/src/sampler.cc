#include "warmflow/sampler.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "text_util.h"
#include "warmflow/checked.h"
#include "warmflow/errors.h"
#include "warmflow/maxflow.h"

namespace warmflow {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

int64_t Rng::uniform(int64_t lo, int64_t hi) {
  if (lo > hi) throw InputError("Rng::uniform with lo > hi");
  const uint64_t range =
      static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  if (range == 0) return static_cast<int64_t>(next());  // full 64-bit range
  const uint64_t threshold = (0 - range) % range;
  while (true) {
    const uint64_t r = next();
    if (r >= threshold) {
      return static_cast<int64_t>(static_cast<uint64_t>(lo) + r % range);
    }
  }
}

Rng Rng::split(uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

namespace {

void check_vector(const std::vector<int64_t>& v, int64_t c_max,
                  const char* what) {
  for (int64_t c : v) {
    if (c < 0) throw InputError(std::string(what) + " has a negative entry");
    if (c > c_max) {
      throw InputError(std::string(what) + " exceeds the declared c_max " +
                       std::to_string(c_max));
    }
  }
}

}  // namespace

CapacityDistribution::CapacityDistribution(Spec spec, int64_t c_max)
    : spec_(std::move(spec)), c_max_(c_max) {
  if (c_max_ < 0) throw InputError("c_max must be nonnegative");
  if (auto* finite = std::get_if<FiniteSupport>(&spec_)) {
    if (finite->vectors.empty()) throw InputError("empty finite support");
    if (finite->vectors.size() != finite->probabilities.size()) {
      throw InputError("support vectors and probabilities differ in count");
    }
    edge_count_ = static_cast<int32_t>(finite->vectors.front().size());
    Rational sum = 0;
    for (std::size_t i = 0; i < finite->vectors.size(); ++i) {
      if (finite->vectors[i].size() != static_cast<std::size_t>(edge_count_)) {
        throw InputError("support vectors differ in length");
      }
      check_vector(finite->vectors[i], c_max_, "support vector");
      if (finite->probabilities[i] <= Rational(0)) {
        throw InputError("support probabilities must be positive");
      }
      sum += finite->probabilities[i];
      denominator_ = checked_mul(
          denominator_ / std::gcd(denominator_, finite->probabilities[i].den()),
          finite->probabilities[i].den());
    }
    if (sum != Rational(1)) {
      throw InputError("support probabilities sum to " + sum.to_string());
    }
    int64_t running = 0;
    for (const Rational& p : finite->probabilities) {
      running = checked_add(running,
                            checked_mul(p.num(), denominator_ / p.den()));
      cumulative_.push_back(running);
    }
  } else if (auto* uniform = std::get_if<IidUniform>(&spec_)) {
    if (uniform->lo.size() != uniform->hi.size()) {
      throw InputError("uniform bounds differ in length");
    }
    edge_count_ = static_cast<int32_t>(uniform->lo.size());
    check_vector(uniform->lo, c_max_, "uniform lower bound");
    check_vector(uniform->hi, c_max_, "uniform upper bound");
    for (int32_t e = 0; e < edge_count_; ++e) {
      if (uniform->lo[e] > uniform->hi[e]) {
        throw InputError("uniform lower bound above upper bound");
      }
    }
  } else {
    const auto& perturbed = std::get<PerturbedBase>(spec_);
    if (perturbed.max_perturbation < 0) {
      throw InputError("perturbation must be nonnegative");
    }
    edge_count_ = static_cast<int32_t>(perturbed.base.size());
    check_vector(perturbed.base, c_max_, "base capacities");
    for (int64_t c : perturbed.base) {
      if (checked_add(c, perturbed.max_perturbation) > c_max_) {
        throw InputError("perturbed capacities can exceed the declared c_max");
      }
    }
  }
}

const FiniteSupport& CapacityDistribution::finite() const {
  if (!is_finite()) throw UnsupportedError("distribution is not finite-support");
  return std::get<FiniteSupport>(spec_);
}

std::size_t CapacityDistribution::draw_index(Rng& rng) const {
  finite();
  const int64_t r = rng.uniform(0, denominator_ - 1);
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  return static_cast<std::size_t>(it - cumulative_.begin());
}

std::vector<int64_t> CapacityDistribution::draw(Rng& rng) const {
  std::vector<int64_t> result;
  if (is_finite()) {
    result = finite().vectors[draw_index(rng)];
  } else if (auto* uniform = std::get_if<IidUniform>(&spec_)) {
    result.resize(edge_count_);
    for (int32_t e = 0; e < edge_count_; ++e) {
      result[e] = rng.uniform(uniform->lo[e], uniform->hi[e]);
    }
  } else {
    const auto& perturbed = std::get<PerturbedBase>(spec_);
    result.resize(edge_count_);
    for (int32_t e = 0; e < edge_count_; ++e) {
      const int64_t noise = rng.uniform(-perturbed.max_perturbation,
                                        perturbed.max_perturbation);
      result[e] = std::max<int64_t>(0, perturbed.base[e] + noise);
    }
  }
  for (int64_t c : result) {
    if (c < 0 || c > c_max_) throw InternalError("draw escaped [0, c_max]");
  }
  return result;
}

Rational expected_cost(const CapacityDistribution& distribution,
                       const FlowAssignment& f,
                       std::span<const FlowAssignment> optima) {
  if (!distribution.is_finite()) {
    throw UnsupportedError(
        "exact expected cost needs a finite-support distribution");
  }
  const FiniteSupport& support = distribution.finite();
  if (optima.size() != support.vectors.size()) {
    throw InputError("one optimum per support vector is required");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < optima.size(); ++i) {
    total += support.probabilities[i] * Rational(l1_error(f, optima[i]));
  }
  return total;
}

double estimate_cost(const CapacityDistribution& distribution,
                     const FlowNetwork& network, const FlowAssignment& f,
                     Rng& rng, int64_t draws) {
  if (draws < 1) throw InputError("estimate_cost needs at least one draw");
  if (distribution.edge_count() != network.edge_count()) {
    throw InputError("distribution and network differ in edge count");
  }
  long double total = 0;
  for (int64_t i = 0; i < draws; ++i) {
    const FlowAssignment optimum =
        max_flow(network.with_capacities(distribution.draw(rng))).flow;
    total += static_cast<long double>(l1_error(f, optimum));
  }
  return static_cast<double>(total / draws);
}

namespace {

void check_count_args(int64_t c_max, int64_t edge_count, double p) {
  if (c_max < 0) throw InputError("c_max must be nonnegative");
  if (edge_count < 1) throw InputError("edge count must be at least 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw InputError("failure probability must lie in (0, 1)");
  }
}

int64_t ceil_to_count(long double k) {
  const long double rounded = std::ceil(k);
  if (!(rounded < 9.2e18L)) {
    throw OverflowError("sample count does not fit in int64");
  }
  return std::max<int64_t>(1, static_cast<int64_t>(rounded));
}

}  // namespace

int64_t hoeffding_sample_count(int64_t c_max, int64_t edge_count, double p) {
  check_count_args(c_max, edge_count, p);
  if (c_max == 0) return 1;
  const long double c = static_cast<long double>(c_max);
  const long double m = static_cast<long double>(edge_count);
  const long double hypotheses = m * std::log(2.0L * c * m + 1.0L);
  const long double confidence = std::log(2.0L / p);
  return ceil_to_count(4.5L * c * c * m * m * (hypotheses + confidence));
}

int64_t pseudo_dimension_sample_count(int64_t c_max, int64_t edge_count,
                                      double p) {
  check_count_args(c_max, edge_count, p);
  if (c_max == 0) return 1;
  const long double c = static_cast<long double>(c_max);
  const long double m = static_cast<long double>(edge_count);
  const long double log_edges = std::max(1.0L, std::log(m));
  const long double hypotheses =
      m * std::log(2.0L * c * m + 1.0L) * log_edges;
  const long double confidence = std::log(2.0L / p);
  return ceil_to_count(4.5L * c * c * m * m * (hypotheses + confidence));
}

double default_failure_probability(int64_t c_max, int64_t edge_count) {
  const double base = static_cast<double>(c_max) * edge_count + 2.0;
  return 1.0 / (base * base);
}

CapacityDistribution parse_distribution(const std::string& text) {
  const auto lines = text::tokenize(text);
  std::string kind;
  std::size_t header_line = 0;
  int64_t edges = 0;
  int64_t c_max = 0;
  int64_t perturbation = 0;
  FiniteSupport finite;
  IidUniform uniform;
  PerturbedBase perturbed;
  std::size_t records = 0;

  auto read_caps = [&](const text::Line& line, std::size_t first) {
    if (line.tokens.size() != first + static_cast<std::size_t>(edges)) {
      throw ParseError(ParseErrorKind::kMalformedLine, line.number,
                       "expected " + std::to_string(edges) + " capacities");
    }
    std::vector<int64_t> caps;
    for (std::size_t i = first; i < line.tokens.size(); ++i) {
      caps.push_back(text::parse_nonnegative(line.tokens[i], line.number,
                                             "capacity"));
    }
    return caps;
  };

  for (const text::Line& line : lines) {
    const std::string_view tag = line.tokens[0];
    if (tag == "c") continue;
    if (tag == "d") {
      if (header_line != 0) {
        throw ParseError(ParseErrorKind::kDuplicateHeader, line.number,
                         "second distribution header");
      }
      header_line = line.number;
      if (line.tokens.size() < 2) {
        throw ParseError(ParseErrorKind::kMalformedLine, line.number,
                         "distribution header without a kind");
      }
      kind = std::string(line.tokens[1]);
      if (kind == "perturbed") {
        text::expect_tokens(line, 5, "distribution header");
        perturbation =
            text::parse_nonnegative(line.tokens[4], line.number, "perturbation");
      } else if (kind == "finite" || kind == "uniform") {
        text::expect_tokens(line, 4, "distribution header");
      } else {
        throw ParseError(ParseErrorKind::kMalformedLine, line.number,
                         "unknown distribution kind '" + kind + "'");
      }
      edges = text::parse_nonnegative(line.tokens[2], line.number, "edge count");
      c_max = text::parse_nonnegative(line.tokens[3], line.number, "c_max");
      continue;
    }
    if (header_line == 0) {
      throw ParseError(ParseErrorKind::kMissingHeader, line.number,
                       "record before the distribution header");
    }
    if (tag == "v" && kind == "finite") {
      if (line.tokens.size() < 2) {
        throw ParseError(ParseErrorKind::kMalformedLine, line.number,
                         "support line without probability");
      }
      try {
        finite.probabilities.push_back(
            Rational::parse(std::string(line.tokens[1])));
      } catch (const InputError& e) {
        throw ParseError(ParseErrorKind::kBadNumber, line.number, e.what());
      }
      finite.vectors.push_back(read_caps(line, 2));
    } else if (tag == "r" && kind == "uniform") {
      text::expect_tokens(line, 3, "range");
      uniform.lo.push_back(
          text::parse_nonnegative(line.tokens[1], line.number, "lower bound"));
      uniform.hi.push_back(
          text::parse_nonnegative(line.tokens[2], line.number, "upper bound"));
    } else if (tag == "b" && kind == "perturbed") {
      if (records > 0) {
        throw ParseError(ParseErrorKind::kCountMismatch, line.number,
                         "second base line");
      }
      perturbed.base = read_caps(line, 1);
      perturbed.max_perturbation = perturbation;
    } else {
      throw ParseError(ParseErrorKind::kUnknownLine, line.number,
                       "unexpected line tag '" + std::string(tag) + "'");
    }
    ++records;
  }
  if (header_line == 0) {
    throw ParseError(ParseErrorKind::kMissingHeader, 1,
                     "no distribution header");
  }
  const bool count_ok = kind == "uniform"
                            ? records == static_cast<std::size_t>(edges)
                            : records >= 1;
  if (!count_ok) {
    throw ParseError(ParseErrorKind::kCountMismatch, header_line,
                     "record count does not match the header");
  }
  try {
    if (kind == "finite") return CapacityDistribution(std::move(finite), c_max);
    if (kind == "uniform") {
      return CapacityDistribution(std::move(uniform), c_max);
    }
    return CapacityDistribution(std::move(perturbed), c_max);
  } catch (const InputError& e) {
    throw ParseError(ParseErrorKind::kBadNumber, header_line, e.what());
  }
}

std::string serialize_distribution(const CapacityDistribution& distribution) {
  std::ostringstream out;
  const int32_t m = distribution.edge_count();
  const auto& spec = distribution.spec();
  if (auto* finite = std::get_if<FiniteSupport>(&spec)) {
    out << "d finite " << m << ' ' << distribution.c_max() << '\n';
    for (std::size_t i = 0; i < finite->vectors.size(); ++i) {
      out << "v " << finite->probabilities[i];
      for (int64_t c : finite->vectors[i]) out << ' ' << c;
      out << '\n';
    }
  } else if (auto* uniform = std::get_if<IidUniform>(&spec)) {
    out << "d uniform " << m << ' ' << distribution.c_max() << '\n';
    for (int32_t e = 0; e < m; ++e) {
      out << "r " << uniform->lo[e] << ' ' << uniform->hi[e] << '\n';
    }
  } else {
    const auto& perturbed = std::get<PerturbedBase>(spec);
    out << "d perturbed " << m << ' ' << distribution.c_max() << ' '
        << perturbed.max_perturbation << '\n';
    out << 'b';
    for (int64_t c : perturbed.base) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

}  // namespace warmflow
