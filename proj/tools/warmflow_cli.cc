// warmflow command-line driver.
//
// Exit codes: 0 success, 1 an experiment assertion failed, 2 bad input.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "warmflow/errors.h"
#include "warmflow/experiments.h"
#include "warmflow/formats.h"
#include "warmflow/generators.h"
#include "warmflow/learner.h"
#include "warmflow/maxflow.h"
#include "warmflow/sampler.h"
#include "warmflow/warmstart.h"

namespace fs = std::filesystem;
using namespace warmflow;

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;

struct Common {
  uint64_t seed = 1;
  std::string variant = "cancel";
  std::string out;
  bool strict_units = false;
  std::optional<int64_t> k;
  int64_t trials = -1;  // -1: per-command default
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

std::string instance_name(const std::string& path) {
  return fs::path(path).stem().string();
}

WarmStartOptions warm_options(const Common& common) {
  return {parse_repair_variant(common.variant), common.strict_units};
}

void print_report(const WarmStartReport& r) {
  std::cout << "variant " << to_string(r.variant) << '\n'
            << "delta " << r.delta << '\n'
            << "repair_rounds " << r.repair_rounds << '\n'
            << "repair_units " << r.repair_units << '\n'
            << "value_before_repair " << r.value_before_repair << '\n'
            << "value_after_repair " << r.value_after_repair << '\n'
            << "augmentations " << r.step2_stats.augmentation_count << '\n'
            << "step2_units " << r.step2_stats.units_pushed << '\n'
            << "arc_scans " << r.total_work() << '\n'
            << "value " << r.final_value << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Warm-started maximum flow with learned predictions"};
  app.require_subcommand(1);
  Common common;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "RNG seed")->capture_default_str();
  };
  auto add_variant = [&](CLI::App* cmd) {
    cmd->add_option("--variant", common.variant, "Repair: cancel|circulation")
        ->check(CLI::IsMember({"cancel", "circulation"}))
        ->capture_default_str();
    cmd->add_flag("--strict-units", common.strict_units,
                  "Cancel one unit per located path or cycle");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out, "Output path (default stdout)");
  };

  std::string network_path;
  std::string flow_path;
  std::string sample_dir;
  std::string distribution_path;

  auto* solve = app.add_subcommand("solve", "Cold Edmonds-Karp max flow");
  solve->add_option("network", network_path, "DIMACS instance")->required();
  add_out(solve);

  auto* warm = app.add_subcommand("warm-solve", "Warm-started max flow");
  warm->add_option("network", network_path, "DIMACS instance")->required();
  warm->add_option("prediction", flow_path, "Predicted flow file")->required();
  add_variant(warm);
  add_out(warm);

  auto* race = app.add_subcommand("race", "Race warm start against cold");
  race->add_option("network", network_path, "DIMACS instance")->required();
  race->add_option("prediction", flow_path, "Predicted flow file")->required();
  add_variant(race);
  add_out(race);

  auto* learn = app.add_subcommand("learn", "Learn a prediction from samples");
  learn->add_option("samples", sample_dir,
                    "Directory with instance.max and sample_<i>.cap")
      ->required();
  add_out(learn);

  int64_t c_max = 0;
  int64_t edges = 0;
  std::optional<double> p;
  bool pseudo = false;
  auto* count = app.add_subcommand("sample-count", "Hoeffding sample count");
  count->add_option("--cmax", c_max, "Maximum capacity")->required();
  count->add_option("--edges", edges, "Edge count")->required();
  count->add_option("--p", p, "Failure probability");
  count->add_flag("--pseudo-dimension", pseudo, "Use the log|E| variant");

  std::vector<int64_t> ladder;
  auto* scaling = app.add_subcommand("exp-scaling", "Warm-start work vs eta");
  scaling->add_option("network", network_path,
                      "DIMACS instance (default: built-in lattice20)");
  scaling->add_option("--ladder", ladder, "Target eta values")->delimiter(',');
  scaling->add_option("--trials", common.trials, "Trials per ladder value");
  add_seed(scaling);
  add_variant(scaling);
  add_out(scaling);

  auto* exactness =
      app.add_subcommand("exp-exactness", "Learner vs brute force");
  exactness->add_option("--trials", common.trials, "Random instances");
  add_seed(exactness);
  add_out(exactness);

  int64_t k_cap = 50'000;
  auto* general =
      app.add_subcommand("exp-generalization", "Sample-count generalization");
  general->add_option("network", network_path,
                      "DIMACS instance (default: built-in example)");
  general->add_option("distribution", distribution_path,
                      "Finite-support distribution file");
  general->add_option("--trials", common.trials, "Repetitions");
  general->add_option("--k", common.k, "Sample count override");
  general->add_option("--k-cap", k_cap, "Cap on the formula sample count")
      ->capture_default_str();
  general->add_option("--p", p, "Failure probability");
  add_seed(general);
  add_out(general);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const FlowNetwork network = parse_network(read_text_file(network_path));
      const MaxFlowResult result = max_flow(network);
      std::cout << "value " << flow_value(network, result.flow) << '\n'
                << "augmentations " << result.stats.augmentation_count << '\n'
                << "arc_scans " << result.stats.arcs_scanned << '\n';
      if (!common.out.empty()) {
        emit(serialize_flow(result.flow, network, instance_name(network_path)),
             common.out);
      }
      return 0;
    }
    if (warm->parsed() || race->parsed()) {
      const FlowNetwork network = parse_network(read_text_file(network_path));
      const FlowFile prediction =
          parse_flow(read_text_file(flow_path), network);
      FlowAssignment flow;
      if (warm->parsed()) {
        WarmStartResult result =
            warm_start_max_flow(network, prediction.flow, warm_options(common));
        print_report(result.report);
        flow = std::move(result.flow);
      } else {
        RaceResult result =
            robust_race(network, prediction.flow, warm_options(common));
        std::cout << "winner " << to_string(result.winner) << '\n'
                  << "warm_work " << result.warm_work << '\n'
                  << "cold_work " << result.cold_work << '\n'
                  << "value " << flow_value(network, result.flow) << '\n';
        flow = std::move(result.flow);
      }
      if (!common.out.empty()) {
        emit(serialize_flow(flow, network, instance_name(network_path)),
             common.out);
      }
      return 0;
    }
    if (learn->parsed()) {
      const SampleCollection collection = read_sample_collection(sample_dir);
      const LearnResult result =
          learn_prediction(collection.network, collection.samples);
      std::cout << "samples " << collection.samples.size() << '\n'
                << "objective " << result.objective << '\n';
      emit(serialize_flow(result.prediction, collection.network,
                          fs::path(sample_dir).filename().string().empty()
                              ? "learned"
                              : fs::path(sample_dir).filename().string()),
           common.out);
      return 0;
    }
    if (count->parsed()) {
      const double prob =
          p.value_or(default_failure_probability(c_max, edges));
      const int64_t k = pseudo ? pseudo_dimension_sample_count(c_max, edges, prob)
                               : hoeffding_sample_count(c_max, edges, prob);
      std::cout << k << '\n';
      return 0;
    }
    if (scaling->parsed()) {
      ScalingOptions options;
      if (!ladder.empty()) options.ladder = ladder;
      if (common.trials >= 0) options.trials = common.trials;
      options.seed = common.seed;
      options.warm = warm_options(common);
      const bool builtin = network_path.empty();
      const FlowNetwork network = builtin
                                      ? lattice20_network()
                                      : parse_network(read_text_file(network_path));
      const ScalingReport report = exp_warmstart_scaling(
          network, builtin ? "lattice20" : instance_name(network_path), options);
      emit(report.to_csv(), common.out);
      std::cerr << report.rows.size() << " rows, " << report.failures
                << " failed, " << report.skipped << " skipped\n";
      return report.failures == 0 ? 0 : kExitAssertion;
    }
    if (exactness->parsed()) {
      ExactnessOptions options;
      if (common.trials >= 0) options.trials = common.trials;
      options.seed = common.seed;
      const ExactnessReport report = exp_learner_exactness(options);
      emit(report.to_csv(), common.out);
      std::cerr << report.rows.size() << " rows, " << report.failures
                << " failed\n";
      return report.failures == 0 ? 0 : kExitAssertion;
    }
    if (general->parsed()) {
      if (network_path.empty() != distribution_path.empty()) {
        throw InputError("give both a network and a distribution, or neither");
      }
      GeneralizationOptions options;
      if (common.trials >= 0) options.reps = common.trials;
      options.seed = common.seed;
      options.k_override = common.k;
      options.k_cap = k_cap;
      options.failure_probability = p;
      std::optional<GeneralizationInstance> builtin;
      if (network_path.empty()) builtin = default_generalization_instance();
      const FlowNetwork network =
          builtin ? builtin->network
                  : parse_network(read_text_file(network_path));
      const CapacityDistribution distribution =
          builtin ? builtin->distribution
                  : parse_distribution(read_text_file(distribution_path));
      const GeneralizationReport report = exp_generalization(
          network, distribution,
          builtin ? "default6" : instance_name(network_path), options);
      emit(report.to_csv(), common.out);
      std::cerr << "k_formula " << report.k_formula << ", " << report.failures
                << " of " << report.rows.size() << " rows failed\n";
      return report.passed() ? 0 : kExitAssertion;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error (" << to_string(e.kind()) << ") at line "
              << e.line() << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
