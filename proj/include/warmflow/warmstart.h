#ifndef WARMFLOW_WARMSTART_H_
#define WARMFLOW_WARMSTART_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "warmflow/maxflow.h"
#include "warmflow/network.h"
#include "warmflow/work.h"

namespace warmflow {

// How an over-capacity prediction is turned into a feasible flow.
enum class RepairVariant {
  // Cancel flow along cycles / s-t paths through violating edges, found by
  // depth-first search on the positive-flow support.
  kCancel,
  // Solve a circulation-with-lower-bounds problem on the reversed graph as
  // an auxiliary max-flow instance.
  kCirculation,
};

const char* to_string(RepairVariant variant);
RepairVariant parse_repair_variant(const std::string& text);

struct WarmStartOptions {
  RepairVariant variant = RepairVariant::kCancel;
  // Cancel exactly one unit per located cycle/path instead of the largest
  // amount the path and the violation allow. Only affects kCancel.
  bool strict_units = false;
};

struct WarmStartReport {
  RepairVariant variant = RepairVariant::kCancel;
  int64_t delta = 0;
  // kCancel: cycles/paths cancelled. kCirculation: augmentations of the
  // auxiliary max flow. Bounded by delta either way.
  int64_t repair_rounds = 0;
  // Flow units removed along cycles/paths (kCancel) or routed by the
  // auxiliary max flow (kCirculation).
  int64_t repair_units = 0;
  int64_t repair_arcs_scanned = 0;
  int64_t value_before_repair = 0;
  int64_t value_after_repair = 0;
  int64_t final_value = 0;
  SolveStats step2_stats;
  // l1 distance from the prediction to an optimum; filled in only by
  // callers that know one.
  std::optional<int64_t> eta;

  // kCirculation only.
  int64_t aux_flow_value = 0;
  bool aux_has_reverse_return = false;

  int64_t total_work() const {
    return repair_arcs_scanned + step2_stats.arcs_scanned;
  }
};

struct RepairResult {
  FlowAssignment flow;
  WarmStartReport report;  // step-2 fields left at zero
};

// Both repairs require a conserving prediction (InputError otherwise) and
// return a feasible conserving flow f' <= prediction whose value dropped by
// at most delta.
RepairResult repair_cancel(const FlowNetwork& network,
                           const FlowAssignment& prediction,
                           bool strict_units = false);
RepairResult repair_circulation(const FlowNetwork& network,
                                const FlowAssignment& prediction);

struct WarmStartResult {
  FlowAssignment flow;
  WarmStartReport report;
};

// Repair, then augment to optimality on the residual network. Work is
// O(|E| * eta) for the l1 error eta against any maximum flow.
WarmStartResult warm_start_max_flow(const FlowNetwork& network,
                                    const FlowAssignment& prediction,
                                    const WarmStartOptions& options = {});

// Metered forms; `flow` holds the prediction on entry. The prediction is
// not validated.
WorkTask cancel_repair_task(const FlowNetwork& network,
                            std::vector<int64_t>& flow, bool strict_units,
                            WarmStartReport& report);
WorkTask circulation_repair_task(const FlowNetwork& network,
                                 std::vector<int64_t>& flow,
                                 WarmStartReport& report);
WorkTask warm_start_task(const FlowNetwork& network,
                         std::vector<int64_t>& flow,
                         WarmStartOptions options, WarmStartReport& report);

inline constexpr int64_t kRaceQuantum = 1024;

enum class RaceWinner { kWarm, kCold };
const char* to_string(RaceWinner winner);

struct RaceResult {
  FlowAssignment flow;
  RaceWinner winner = RaceWinner::kWarm;
  int64_t warm_work = 0;  // arc scans performed by the warm leg
  int64_t cold_work = 0;  // arc scans performed by the cold leg
  int64_t total_work() const { return warm_work + cold_work; }
};

// Alternates `quantum` arc scans of the warm-start pipeline with `quantum`
// arc scans of cold Edmonds-Karp, warm first, and returns the flow of
// whichever finishes first. Total work is at most
// 2 * min(warm alone, cold alone) + quantum.
RaceResult robust_race(const FlowNetwork& network,
                       const FlowAssignment& prediction,
                       const WarmStartOptions& options = {},
                       int64_t quantum = kRaceQuantum);

}  // namespace warmflow

#endif  // WARMFLOW_WARMSTART_H_
