// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "warmflow/errors.h"
#include "warmflow/experiments.h"
#include "warmflow/formats.h"
#include "warmflow/generators.h"
#include "warmflow/learner.h"
#include "warmflow/maxflow.h"
#include "warmflow/warmstart.h"

using namespace warmflow;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Trial {
  FlowNetwork network;
  FlowAssignment prediction;
};

constexpr int kParityTrials = 1200;
constexpr uint64_t kSeed = 20240901;

std::vector<Trial> parity_trials() {
  std::vector<Trial> trials;
  for (int i = 0; i < kParityTrials; ++i) {
    Rng rng = Rng(kSeed).split(i);
    FlowNetwork g = random_network(rng, {2, 8, 1, 14, 6});
    FlowAssignment pred = random_conserving_prediction(g, rng, 5, 6);
    trials.push_back({std::move(g), std::move(pred)});
  }
  return trials;
}

std::string where(int trial) { return " (trial " + std::to_string(trial) + ")"; }

Outcome criterion1(const std::vector<Trial>& trials) {
  for (int i = 0; i < static_cast<int>(trials.size()); ++i) {
    const Trial& t = trials[i];
    const int64_t cold = flow_value(t.network, max_flow(t.network).flow);
    const int64_t cut = min_cut_value_bruteforce(t.network);
    if (cold != cut) return {false, "cold != min cut" + where(i)};
    for (RepairVariant v : {RepairVariant::kCancel, RepairVariant::kCirculation}) {
      const WarmStartResult w = warm_start_max_flow(t.network, t.prediction, {v});
      if (w.report.final_value != cold || !is_feasible(t.network, w.flow)) {
        return {false, std::string(to_string(v)) + " value mismatch" + where(i)};
      }
    }
  }
  return {true, std::to_string(trials.size()) +
                    " instances, both variants == cold == brute-force cut"};
}

Outcome criterion2(const std::vector<Trial>& trials) {
  int64_t checks = 0;
  for (int i = 0; i < static_cast<int>(trials.size()); ++i) {
    const Trial& t = trials[i];
    const FlowAssignment opt = max_flow(t.network).flow;
    const int64_t eta = l1_error(t.prediction, opt);
    for (RepairVariant v : {RepairVariant::kCancel, RepairVariant::kCirculation}) {
      const WarmStartReport r =
          warm_start_max_flow(t.network, t.prediction, {v}).report;
      const bool ok = r.delta <= eta && r.repair_rounds <= r.delta &&
                      r.value_before_repair - r.value_after_repair <= r.delta &&
                      r.step2_stats.units_pushed <= eta + r.delta &&
                      eta + r.delta <= 2 * eta;
      if (!ok) return {false, std::string(to_string(v)) + where(i)};
      ++checks;
    }
  }
  return {true, std::to_string(checks) +
                    " runs: rounds <= delta, drop <= delta, step-2 units <= "
                    "eta + delta <= 2 eta"};
}

Outcome criterion3(const std::vector<Trial>& trials) {
  int64_t violating = 0;
  for (int i = 0; i < static_cast<int>(trials.size()); ++i) {
    const Trial& t = trials[i];
    const FlowNetwork& g = t.network;
    const RepairResult r = repair_circulation(g, t.prediction);
    const int64_t delta = r.report.delta;
    violating += delta > 0;
    if (r.report.aux_flow_value != delta) {
      return {false, "auxiliary flow does not saturate" + where(i)};
    }
    // Cancellation flow on the reversed graph: f_tilde(v,u) = f(u,v) - f_bar(u,v).
    std::vector<int64_t> balance(g.node_count(), 0);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const int64_t cancel = t.prediction[e] - r.flow[e];
      if (cancel < 0 || cancel > t.prediction[e]) {
        return {false, "cancellation outside [0, f]" + where(i)};
      }
      const int64_t excess = t.prediction[e] - g.capacity(e);
      if (excess > 0 && cancel < excess) {  // condition (i)
        return {false, "condition (i) broken" + where(i)};
      }
      // Reversed arc runs head -> tail.
      balance[g.edge(e).head] -= cancel;
      balance[g.edge(e).tail] += cancel;
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (v != g.source() && v != g.sink() && balance[v] != 0) {
        return {false, "cancellation flow does not conserve" + where(i)};
      }
    }
    const int64_t value = -balance[g.sink()];  // net outflow of t
    if (value > delta) return {false, "condition (ii) broken" + where(i)};
  }
  return {true, std::to_string(trials.size()) + " repairs (" +
                    std::to_string(violating) +
                    " with violations): (i), (ii) hold, aux value == delta"};
}

Outcome criterion4(ExactnessReport& report) {
  ExactnessOptions options;
  options.trials = 600;
  options.seed = kSeed;
  report = exp_learner_exactness(options);
  if (report.failures != 0) {
    for (const ExactnessRow& row : report.rows) {
      if (row.status == TrialStatus::kFail) {
        return {false, "objective " + row.objective.to_string() +
                           " != brute force " + row.brute_force.to_string() +
                           where(static_cast<int>(row.trial))};
      }
    }
  }
  return {true, std::to_string(report.rows.size()) +
                    " instances, learner objective == boxed brute force"};
}

Outcome criterion5(const ExactnessReport& exactness) {
  int64_t checked = 0;
  for (const ExactnessRow& row : exactness.rows) {
    if (row.norm > row.norm_bound) {
      return {false, "norm bound broken" + where(static_cast<int>(row.trial))};
    }
    ++checked;
  }
  // Larger instances than brute force allows.
  for (int i = 0; i < 500; ++i) {
    Rng rng = Rng(kSeed + 5).split(i);
    const FlowNetwork g = random_network(rng, {2, 9, 1, 18, 6});
    const int64_t k = rng.uniform(1, 8);
    std::vector<std::vector<int64_t>> samples(k);
    int64_t c_max = 0;
    for (auto& caps : samples) {
      for (int32_t e = 0; e < g.edge_count(); ++e) {
        caps.push_back(rng.uniform(0, 6));
        c_max = std::max(c_max, caps.back());
      }
    }
    const LearnResult r = learn_prediction(g, samples);
    int64_t norm = 0;
    for (int64_t v : r.prediction.values()) norm += v;
    if (norm > 2 * c_max * g.edge_count()) {
      return {false, "norm bound broken on large instance" + where(i)};
    }
    ++checked;
  }
  return {true, std::to_string(checked) +
                    " learner outputs within 2 c_max |E|"};
}

Outcome criterion6() {
  const GeneralizationInstance inst = default_generalization_instance();
  GeneralizationOptions options;
  options.reps = 20;
  options.seed = kSeed;
  const GeneralizationReport r =
      exp_generalization(inst.network, inst.distribution, "default6", options);
  Rational worst_gap = 0;
  Rational worst_deviation = 0;
  for (const GeneralizationRow& row : r.rows) {
    if (!(row.gap <= Rational(2))) {
      return {false, "gap " + row.gap.to_string() + " at k=" +
                         std::to_string(row.k)};
    }
    if (!(row.deviation <= Rational(1))) {
      return {false, "deviation " + row.deviation.to_string() + " at k=" +
                         std::to_string(row.k)};
    }
    worst_gap = std::max(worst_gap, row.gap);
    worst_deviation = std::max(worst_deviation, row.deviation);
  }
  std::ostringstream detail;
  detail << r.rows.size() << " reps at k in {" << r.k_formula << ", "
         << options.k_cap << "}: max gap " << worst_gap << " <= 2, max |dev| "
         << worst_deviation.to_double() << " <= 1";
  return {true, detail.str()};
}

Outcome criterion7(const std::vector<Trial>& trials) {
  for (int i = 0; i < static_cast<int>(trials.size()); ++i) {
    const Trial& t = trials[i];
    const int64_t warm =
        warm_start_max_flow(t.network, t.prediction).report.total_work();
    const int64_t cold = max_flow(t.network).stats.arcs_scanned;
    const RaceResult race = robust_race(t.network, t.prediction);
    if (race.total_work() > 2 * std::min(warm, cold) + kRaceQuantum) {
      return {false, "race work " + std::to_string(race.total_work()) +
                         where(i)};
    }
    if (flow_value(t.network, race.flow) !=
        flow_value(t.network, max_flow(t.network).flow)) {
      return {false, "race value mismatch" + where(i)};
    }
  }
  return {true, std::to_string(trials.size()) +
                    " races within 2 min(warm, cold) + 1024 arc scans"};
}

Outcome criterion8() {
  for (int i = 0; i < 1000; ++i) {
    Rng rng = Rng(kSeed + 8).split(i);
    const FlowNetwork g = random_network(rng, {2, 12, 0, 30, 1000});
    const std::string text = serialize_network(g);
    if (!(parse_network(text) == g)) return {false, "network" + where(i)};
    std::vector<int64_t> values(g.edge_count());
    for (auto& v : values) v = rng.uniform(0, 1'000'000);
    const FlowAssignment f(values);
    const FlowFile back = parse_flow(serialize_flow(f, g, "case"), g);
    if (!(back.flow == f) || back.instance_name != "case") {
      return {false, "flow" + where(i)};
    }
  }
  const fs::path bad = fs::path(WARMFLOW_TEST_DATA) / "bad";
  std::ifstream manifest(bad / "MANIFEST");
  const FlowNetwork diamond =
      parse_network(read_text_file(fs::path(WARMFLOW_TEST_DATA) / "diamond.max"));
  std::string line;
  int files = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string file, kind;
    std::size_t at = 0;
    row >> file >> kind >> at;
    try {
      const std::string text = read_text_file(bad / file);
      if (fs::path(file).extension() == ".flow") {
        parse_flow(text, diamond);
      } else {
        parse_network(text);
      }
      return {false, file + " parsed"};
    } catch (const ParseError& e) {
      if (kind != to_string(e.kind()) || at != e.line()) {
        return {false, file + ": got " + to_string(e.kind()) + "@" +
                           std::to_string(e.line())};
      }
    }
    ++files;
  }
  if (files < 20) return {false, "only " + std::to_string(files) + " bad files"};
  return {true, "1000 network + 1000 flow round trips; " +
                    std::to_string(files) + " bad files give kind and line"};
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    failed += !outcome.pass;
    std::printf("criterion %d [%s] %s: %s (%.2f s)\n", id,
                outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str(),
                seconds);
    std::fflush(stdout);
  };

  const std::vector<Trial> trials = parity_trials();
  ExactnessReport exactness;
  report(1, "correctness parity", [&] { return criterion1(trials); });
  report(2, "warm-start work bound", [&] { return criterion2(trials); });
  report(3, "circulation repair conditions", [&] { return criterion3(trials); });
  report(4, "learner exactness", [&] { return criterion4(exactness); });
  report(5, "learner norm bound", [&] { return criterion5(exactness); });
  report(6, "generalization at desk scale", criterion6);
  report(7, "race overhead", [&] { return criterion7(trials); });
  report(8, "format round trips", criterion8);
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
