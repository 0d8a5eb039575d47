#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esim/spec_file.hpp"

namespace esim {

// Options shared by every harness command. Commands read the spec, run the
// engine, and write CSV/artifact files keyed by the spec's experiment name
// into out_dir. Outputs are byte-identical across reruns of the same spec
// and seed.
struct CliOptions {
  std::string spec_path;
  std::string out_dir = ".";
  bool strict = false;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> thresholds;  // sweep override; empty = spec list
};

// Fixed row schema shared by all metrics CSVs.
inline constexpr const char* kMetricsCsvHeader =
    "workload,threshold,sim_time_ns,network_bytes,pulls,pushes,jumps,jump_freq";

// Each returns a process exit code: 0 ok, 2 bad input, 3 failed verification.
int cmd_run(const CliOptions& opt);
int cmd_baseline(const CliOptions& opt);
int cmd_sweep(const CliOptions& opt);
int cmd_depth_sweep(const CliOptions& opt);
int cmd_report(const CliOptions& opt);
int cmd_gen_trace(const CliOptions& opt);
int cmd_verify(const CliOptions& opt, const std::string& events_path,
               const std::string& metrics_path);

}  // namespace esim
