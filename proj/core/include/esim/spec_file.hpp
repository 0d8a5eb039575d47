#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esim/engine.hpp"
#include "esim/trace.hpp"
#include "esim/workloads.hpp"

namespace esim {

// One experiment as described by a spec file: the cluster and cost shape,
// the workload (or a pre-recorded trace), the jump policy, and the sweep
// lists. `name` keys every output file the harness writes.
struct ExperimentSpec {
  std::string name = "experiment";
  RunConfig config;
  std::string workload;  // empty when trace_file drives the run
  WorkloadParams params;
  std::string trace_file;
  std::vector<std::uint64_t> sweep_thresholds{32, 64, 512, 8192};
  std::vector<std::uint32_t> depth_sweep_depths{6, 8, 10, 12};
  std::uint64_t depth_sweep_threshold = 512;
};

// Flat INI-style text: [section] headers, key = value lines, # comments.
// Latency keys carry their unit as a suffix (_ns, _us, _ms, _s) and convert
// to exact integer nanoseconds. Thresholds accept K/M/G binary suffixes.
// Errors name the origin and line: "desk.cfg:12: unknown key ...".
ExperimentSpec parse_spec_text(const std::string& text, const std::string& origin);
ExperimentSpec parse_spec_file(const std::string& path);

// Loads trace_file when set, otherwise generates the named workload.
AccessTrace resolve_trace(const ExperimentSpec& spec);

// "32,512,8192,4M" -> {32, 512, 8192, 4194304}. Used for the --thresholds
// flag; `origin` names the source in error messages.
std::vector<std::uint64_t> parse_threshold_list(const std::string& raw,
                                                const std::string& origin);

}  // namespace esim
