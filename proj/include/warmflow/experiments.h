#ifndef WARMFLOW_EXPERIMENTS_H_
#define WARMFLOW_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "warmflow/network.h"
#include "warmflow/rational.h"
#include "warmflow/sampler.h"
#include "warmflow/warmstart.h"

namespace warmflow {

// Every experiment writes
//   # warmflow-csv v1 experiment=<id>
//   <header row>
//   <one row per trial, in trial order>
// Rows are a function of (experiment, seed, instance) except `wall_us`.
inline constexpr const char* kCsvVersion = "v1";

enum class TrialStatus { kOk, kFail, kSkipped };
const char* to_string(TrialStatus status);

// ---- warm-start scaling ----

struct ScalingOptions {
  std::vector<int64_t> ladder = {0, 2, 4, 6, 8, 10, 15, 20};
  int64_t trials = 10;  // per ladder rung
  uint64_t seed = 1;
  WarmStartOptions warm;
};

struct ScalingRow {
  int64_t trial = 0;
  int64_t eta_target = 0;
  int64_t eta = 0;
  int64_t delta = 0;
  int64_t repair_rounds = 0;
  int64_t repair_units = 0;
  int64_t step2_augmentations = 0;
  int64_t step2_units = 0;
  int64_t warm_work = 0;  // arc scans, repair plus augmentation
  int64_t cold_work = 0;
  int64_t value = 0;
  TrialStatus status = TrialStatus::kOk;
  int64_t wall_us = 0;
};

struct ScalingReport {
  std::string instance;
  uint64_t seed = 0;
  RepairVariant variant = RepairVariant::kCancel;
  std::vector<ScalingRow> rows;
  int64_t failures = 0;
  int64_t skipped = 0;
  std::string to_csv() const;
};

// For each rung, synthesizes predictions at distance exactly eta_target from
// the cold optimum and runs the warm start. A row fails when repair rounds
// exceed delta, step-2 units exceed eta + delta, or the value differs from
// the cold value. Unreachable targets give skipped rows.
ScalingReport exp_warmstart_scaling(const FlowNetwork& network,
                                    const std::string& instance,
                                    const ScalingOptions& options);

// ---- learner exactness ----

struct ExactnessOptions {
  int64_t trials = 500;
  uint64_t seed = 1;
  int32_t max_nodes = 5;
  int32_t max_edges = 6;
  int64_t max_capacity = 3;
  int64_t max_samples = 4;
  // Every `single_edge_period`-th trial uses a one-edge network and also
  // checks the median property. 0 disables.
  int64_t single_edge_period = 8;
};

struct ExactnessRow {
  int64_t trial = 0;
  int32_t nodes = 0;
  int32_t edges = 0;
  int64_t samples = 0;
  Rational objective;
  Rational brute_force;
  std::optional<bool> median_ok;  // single-edge trials only
  int64_t norm = 0;                // ||f_hat||_1
  int64_t norm_bound = 0;          // 2 c_max |E|
  TrialStatus status = TrialStatus::kOk;
  int64_t wall_us = 0;
};

struct ExactnessReport {
  uint64_t seed = 0;
  std::vector<ExactnessRow> rows;
  int64_t failures = 0;
  std::string to_csv() const;
};

ExactnessReport exp_learner_exactness(const ExactnessOptions& options);

// ---- generalization ----

struct GeneralizationOptions {
  int64_t reps = 20;
  uint64_t seed = 1;
  std::optional<int64_t> k_override;
  int64_t k_cap = 50'000;
  // Failure probability for the sample-count formula; default
  // 1 / (c_max |E| + 2)^2.
  std::optional<double> failure_probability;
};

struct GeneralizationRow {
  int64_t rep = 0;
  int64_t k = 0;
  int64_t k_formula = 0;
  Rational cost_learned;   // cost_D(f_hat)
  Rational cost_optimal;   // cost_D(f_tilde)
  Rational gap;
  Rational cost_samples;   // sample average for f_hat
  Rational deviation;      // |cost_samples - cost_learned|
  TrialStatus status = TrialStatus::kOk;
  int64_t wall_us = 0;
};

struct GeneralizationReport {
  std::string instance;
  uint64_t seed = 0;
  double failure_probability = 0;
  int64_t k_formula = 0;
  FlowAssignment optimal_prediction;  // f_tilde
  std::vector<GeneralizationRow> rows;
  int64_t failures = 0;  // rows breaking gap <= 2 or deviation <= 1
  // Failing rows are tolerated up to a p fraction of the rows.
  bool passed() const;
  std::string to_csv() const;
};

// Needs a finite-support distribution (UnsupportedError otherwise). Runs
// at the formula k when it is within the cap and at the cap, unless an
// override is given.
GeneralizationReport exp_generalization(
    const FlowNetwork& network, const CapacityDistribution& distribution,
    const std::string& instance, const GeneralizationOptions& options);

struct GeneralizationInstance {
  FlowNetwork network;
  CapacityDistribution distribution;
};

// Six-edge, four-node network with a four-point support and c_max = 3.
GeneralizationInstance default_generalization_instance();

}  // namespace warmflow

#endif  // WARMFLOW_EXPERIMENTS_H_
