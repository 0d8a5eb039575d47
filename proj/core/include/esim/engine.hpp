#pragma once

#include <cstdint>
#include <vector>

#include "esim/cost_model.hpp"
#include "esim/event_log.hpp"
#include "esim/metrics.hpp"
#include "esim/policy.hpp"
#include "esim/trace.hpp"
#include "esim/types.hpp"

namespace esim {

// Where pages live before the first access is replayed.
//
// kHomeSpill models the usual startup: the workload filled the home node
// until memory pressure forced a balance, so when the footprint reaches the
// home trigger, the earliest-allocated pages (the LRU end) have already been
// pushed out. Receivers fill in ascending node id up to their capacity; home
// keeps the most recently allocated suffix. The movement happened during
// data loading, before the measured window, so it costs nothing here. Any
// footprint below the home trigger stays entirely on the home node.
//
// kExplicitMap places page v on owner[v], also free of charge.
struct PlacementSpec {
  enum class Kind { kHomeSpill, kExplicitMap };
  Kind kind = Kind::kHomeSpill;
  std::vector<NodeId> owner;  // one entry per page, kExplicitMap only

  bool operator==(const PlacementSpec&) const = default;
};

struct RunConfig {
  std::vector<std::uint32_t> capacities{4096, 4096};
  double high_watermark = 0.95;
  double low_watermark = 0.90;
  CostModel costs = CostModel::defaults();
  PolicySpec policy{};
  NodeId home_node = 0;
  PlacementSpec placement{};
  bool strict = false;         // audit after every event; implies event recording
  bool record_events = false;  // keep the event log in the result
  std::uint32_t residency_samples = 0;  // 0 = no residency series
};

struct RunResult {
  RunMetrics metrics;
  EventLog log;  // populated iff events_recorded
  bool events_recorded = false;
  NodeId final_exec = 0;
};

// Replays the trace: setup (stretch + placement + queued region syncs), then
// one simulated access per trace entry, consulting the jump policy after
// every pull. When events are recorded the log is replay-verified against
// the metrics before returning.
RunResult run(const AccessTrace& trace, const RunConfig& cfg);

// Same trace and config with jumping disabled; execution never leaves home.
RunResult run_baseline(const AccessTrace& trace, const RunConfig& cfg);

double jump_frequency(const RunMetrics& m);  // jumps per simulated second

// A-relative-to-B comparison of two runs over the same trace.
struct ComparisonReport {
  double speedup = 0.0;        // time_b / time_a: > 1 means A finished sooner
  double traffic_ratio = 0.0;  // bytes_a / bytes_b: < 1 means A moved less
  std::uint64_t jumps_a = 0;
  std::uint64_t jumps_b = 0;
  double jump_freq_a = 0.0;
  double jump_freq_b = 0.0;
};

ComparisonReport compare(const RunMetrics& a, const RunMetrics& b);

struct SweepRow {
  std::uint64_t threshold;  // ThresholdPolicy::kNeverThreshold on the baseline row
  RunMetrics metrics;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // ascending thresholds, baseline last

  // Fastest threshold row by sim_time, ties to the smallest threshold.
  std::size_t best_index() const;
  const SweepRow& baseline() const { return rows.back(); }
};

// One run per threshold plus the baseline. Runs execute in parallel; rows
// come back in deterministic (ascending, baseline-last) order. Thresholds
// must be non-empty and strictly ascending.
SweepReport sweep_thresholds(const AccessTrace& trace, const RunConfig& base,
                             const std::vector<std::uint64_t>& thresholds);

}  // namespace esim
