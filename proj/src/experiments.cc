#include "warmflow/experiments.h"

#include <chrono>
#include <sstream>

#include "warmflow/errors.h"
#include "warmflow/generators.h"
#include "warmflow/learner.h"
#include "warmflow/maxflow.h"
#include "warmflow/oracles.h"
#include "warmflow/parallel.h"

namespace warmflow {

namespace {

using Clock = std::chrono::steady_clock;

int64_t elapsed_us(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() -
                                                               start)
      .count();
}

void csv_preamble(std::ostringstream& out, const char* experiment,
                  const char* header) {
  out << "# warmflow-csv " << kCsvVersion << " experiment=" << experiment
      << '\n'
      << header << '\n';
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

}  // namespace

const char* to_string(TrialStatus status) {
  switch (status) {
    case TrialStatus::kOk:
      return "ok";
    case TrialStatus::kFail:
      return "FAIL";
    case TrialStatus::kSkipped:
      return "skipped";
  }
  return "?";
}

ScalingReport exp_warmstart_scaling(const FlowNetwork& network,
                                    const std::string& instance,
                                    const ScalingOptions& options) {
  if (options.trials < 0) throw InputError("trials must be nonnegative");
  for (int64_t eta : options.ladder) {
    if (eta < 0) throw InputError("ladder values must be nonnegative");
  }
  const MaxFlowResult cold = max_flow(network);
  const int64_t cold_value = flow_value(network, cold.flow);
  const std::size_t count = options.ladder.size() * options.trials;
  std::vector<ScalingRow> rows(count);
  parallel_for(count, [&](std::size_t index) {
    const auto start = Clock::now();
    ScalingRow& row = rows[index];
    row.trial = static_cast<int64_t>(index);
    row.eta_target = options.ladder[index / options.trials];
    row.cold_work = cold.stats.arcs_scanned;
    Rng rng = Rng(options.seed).split(index);
    const std::optional<FlowAssignment> prediction =
        synthesize_prediction(network, cold.flow, row.eta_target, rng);
    if (!prediction.has_value()) {
      row.status = TrialStatus::kSkipped;
      row.wall_us = elapsed_us(start);
      return;
    }
    const WarmStartResult warm =
        warm_start_max_flow(network, *prediction, options.warm);
    const WarmStartReport& report = warm.report;
    row.eta = l1_error(*prediction, cold.flow);
    row.delta = report.delta;
    row.repair_rounds = report.repair_rounds;
    row.repair_units = report.repair_units;
    row.step2_augmentations = report.step2_stats.augmentation_count;
    row.step2_units = report.step2_stats.units_pushed;
    row.warm_work = report.total_work();
    row.value = report.final_value;
    const bool ok = row.eta == row.eta_target &&
                    row.repair_rounds <= row.delta &&
                    row.step2_units <= row.eta + row.delta &&
                    row.value == cold_value;
    row.status = ok ? TrialStatus::kOk : TrialStatus::kFail;
    row.wall_us = elapsed_us(start);
  });
  ScalingReport report{instance, options.seed, options.warm.variant,
                       std::move(rows), 0, 0};
  for (const ScalingRow& row : report.rows) {
    report.failures += row.status == TrialStatus::kFail;
    report.skipped += row.status == TrialStatus::kSkipped;
  }
  return report;
}

std::string ScalingReport::to_csv() const {
  std::ostringstream out;
  csv_preamble(out, "scaling",
               "seed,instance,variant,trial,eta_target,eta,delta,"
               "repair_rounds,repair_units,step2_augmentations,step2_units,"
               "warm_work,cold_work,value,status,wall_us");
  for (const ScalingRow& r : rows) {
    out << seed << ',' << instance << ',' << to_string(variant) << ','
        << r.trial << ',' << r.eta_target << ',' << r.eta << ',' << r.delta
        << ',' << r.repair_rounds << ',' << r.repair_units << ','
        << r.step2_augmentations << ',' << r.step2_units << ','
        << r.warm_work << ',' << r.cold_work << ',' << r.value << ','
        << to_string(r.status) << ',' << r.wall_us << '\n';
  }
  return out.str();
}

ExactnessReport exp_learner_exactness(const ExactnessOptions& options) {
  if (options.trials < 0 || options.max_samples < 1 ||
      options.max_edges < 1 || options.max_nodes < 2 ||
      options.max_capacity < 0) {
    throw InputError("invalid exactness options");
  }
  std::vector<ExactnessRow> rows(options.trials);
  parallel_for(rows.size(), [&](std::size_t index) {
    const auto start = Clock::now();
    ExactnessRow& row = rows[index];
    row.trial = static_cast<int64_t>(index);
    Rng rng = Rng(options.seed).split(index);
    const bool single_edge =
        options.single_edge_period > 0 &&
        row.trial % options.single_edge_period == options.single_edge_period - 1;
    RandomNetworkOptions shape{2, options.max_nodes, 1, options.max_edges,
                               options.max_capacity};
    if (single_edge) shape = {2, 2, 1, 1, options.max_capacity};
    FlowNetwork network = random_network(rng, shape);
    if (single_edge && network.edge(0).tail != network.source()) {
      network = FlowNetwork(2, {{0, 1}}, 0, 1, network.capacities());
    }
    const int64_t k = rng.uniform(1, options.max_samples);
    std::vector<std::vector<int64_t>> samples(k);
    for (auto& caps : samples) {
      for (int32_t e = 0; e < network.edge_count(); ++e) {
        caps.push_back(rng.uniform(0, options.max_capacity));
      }
    }
    const LearnResult learned = learn_prediction(network, samples);
    const std::vector<FlowAssignment> optima = sample_optima(network, samples);
    const BruteForceLearnResult brute = brute_force_learn(
        network, optima, {}, sample_box(network.edge_count(), optima));
    row.nodes = network.node_count();
    row.edges = network.edge_count();
    row.samples = k;
    row.objective = learned.objective;
    row.brute_force = brute.objective;
    int64_t c_max = 0;
    for (const auto& caps : samples) {
      for (int64_t c : caps) c_max = std::max(c_max, c);
    }
    for (int64_t v : learned.prediction.values()) row.norm += v;
    row.norm_bound = 2 * c_max * network.edge_count();
    bool ok = row.objective == row.brute_force && row.norm <= row.norm_bound;
    if (single_edge) {
      std::vector<int64_t> values;
      for (const FlowAssignment& f : optima) values.push_back(f[0]);
      row.median_ok =
          is_weighted_median(values, {}, learned.prediction[0]);
      ok = ok && *row.median_ok;
    }
    row.status = ok ? TrialStatus::kOk : TrialStatus::kFail;
    row.wall_us = elapsed_us(start);
  });
  ExactnessReport report{options.seed, std::move(rows), 0};
  for (const ExactnessRow& row : report.rows) {
    report.failures += row.status == TrialStatus::kFail;
  }
  return report;
}

std::string ExactnessReport::to_csv() const {
  std::ostringstream out;
  csv_preamble(out, "exactness",
               "seed,trial,nodes,edges,samples,objective,brute_force,"
               "median_ok,norm,norm_bound,status,wall_us");
  for (const ExactnessRow& r : rows) {
    out << seed << ',' << r.trial << ',' << r.nodes << ',' << r.edges << ','
        << r.samples << ',' << r.objective << ',' << r.brute_force << ','
        << (r.median_ok.has_value() ? (*r.median_ok ? "yes" : "no") : "")
        << ',' << r.norm << ',' << r.norm_bound << ','
        << to_string(r.status) << ',' << r.wall_us << '\n';
  }
  return out.str();
}

GeneralizationReport exp_generalization(
    const FlowNetwork& network, const CapacityDistribution& distribution,
    const std::string& instance, const GeneralizationOptions& options) {
  const FiniteSupport& support = distribution.finite();
  if (distribution.edge_count() != network.edge_count()) {
    throw InputError("distribution and network differ in edge count");
  }
  if (options.reps < 0) throw InputError("reps must be nonnegative");
  if (options.k_cap < 1) throw InputError("k cap must be positive");
  if (options.k_override.has_value() && *options.k_override < 1) {
    throw InputError("k must be positive");
  }

  GeneralizationReport report;
  report.instance = instance;
  report.seed = options.seed;
  report.failure_probability = options.failure_probability.value_or(
      default_failure_probability(distribution.c_max(), network.edge_count()));
  report.k_formula = hoeffding_sample_count(
      distribution.c_max(), network.edge_count(), report.failure_probability);

  std::vector<int64_t> ks;
  if (options.k_override.has_value()) {
    ks.push_back(*options.k_override);
  } else {
    if (report.k_formula < options.k_cap) ks.push_back(report.k_formula);
    ks.push_back(options.k_cap);
  }

  const std::vector<FlowAssignment> optima =
      sample_optima(network, support.vectors);
  const LearnResult best =
      learn_prediction(network, support.vectors, support.probabilities);
  report.optimal_prediction = best.prediction;
  const Rational cost_optimal =
      expected_cost(distribution, best.prediction, optima);

  const std::size_t count = ks.size() * options.reps;
  report.rows.resize(count);
  parallel_for(count, [&](std::size_t index) {
    const auto start = Clock::now();
    GeneralizationRow& row = report.rows[index];
    row.rep = static_cast<int64_t>(index % options.reps);
    row.k = ks[index / options.reps];
    row.k_formula = report.k_formula;
    Rng rng = Rng(options.seed).split(index);
    // k draws collapse to multiplicities over the support.
    std::vector<int64_t> counts(support.vectors.size(), 0);
    for (int64_t i = 0; i < row.k; ++i) ++counts[distribution.draw_index(rng)];
    std::vector<FlowAssignment> drawn;
    std::vector<int64_t> weights;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      drawn.push_back(optima[i]);
      weights.push_back(counts[i]);
    }
    const LearnResult learned = learn_from_optima(network, drawn, weights);
    row.cost_learned = expected_cost(distribution, learned.prediction, optima);
    row.cost_optimal = cost_optimal;
    row.gap = row.cost_learned - cost_optimal;
    row.cost_samples = learned.objective;
    row.deviation = abs(row.cost_samples - row.cost_learned);
    const bool ok = row.gap >= Rational(0) && row.gap <= Rational(2) &&
                    row.deviation <= Rational(1);
    row.status = ok ? TrialStatus::kOk : TrialStatus::kFail;
    row.wall_us = elapsed_us(start);
  });
  for (const GeneralizationRow& row : report.rows) {
    report.failures += row.status == TrialStatus::kFail;
  }
  return report;
}

bool GeneralizationReport::passed() const {
  return static_cast<double>(failures) <=
         failure_probability * static_cast<double>(rows.size());
}

std::string GeneralizationReport::to_csv() const {
  std::ostringstream out;
  csv_preamble(out, "generalization",
               "seed,instance,rep,k,k_formula,p,cost_learned,cost_optimal,"
               "gap,cost_samples,deviation,status,wall_us");
  for (const GeneralizationRow& r : rows) {
    out << seed << ',' << instance << ',' << r.rep << ',' << r.k << ','
        << r.k_formula << ',' << failure_probability << ','
        << r.cost_learned << ',' << r.cost_optimal << ',' << r.gap << ','
        << r.cost_samples << ',' << r.deviation << ','
        << to_string(r.status) << ',' << r.wall_us << '\n';
  }
  return out.str();
}

GeneralizationInstance default_generalization_instance() {
  FlowNetwork network(4, {{0, 1}, {0, 2}, {1, 2}, {2, 1}, {1, 3}, {2, 3}}, 0,
                      3, {3, 3, 3, 3, 3, 3});
  FiniteSupport support;
  support.vectors = {{3, 2, 1, 0, 2, 3},
                     {1, 3, 0, 2, 3, 1},
                     {2, 2, 2, 2, 1, 1},
                     {0, 1, 3, 0, 3, 2}};
  support.probabilities = {Rational(1, 2), Rational(1, 4), Rational(1, 8),
                           Rational(1, 8)};
  return {std::move(network), CapacityDistribution(std::move(support), 3)};
}

}  // namespace warmflow
