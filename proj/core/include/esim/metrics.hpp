#pragma once

#include <cstdint>
#include <vector>

#include "esim/cost_model.hpp"
#include "esim/types.hpp"

namespace esim {

struct OpCounts {
  std::uint64_t stretches = 0;
  std::uint64_t pushes = 0;
  std::uint64_t pulls = 0;
  std::uint64_t jumps = 0;
  std::uint64_t local_hits = 0;
  std::uint64_t remote_faults = 0;  // always equal to pulls
  std::uint64_t sync_msgs = 0;

  bool operator==(const OpCounts&) const = default;
};

struct JumpRecord {
  SimTime at_ns;  // cumulative time once the jump completed
  NodeId from;
  NodeId to;
  bool operator==(const JumpRecord&) const = default;
};

struct ResidencySample {
  SimTime at_ns;
  std::vector<std::uint32_t> resident_pages;  // per node
  bool operator==(const ResidencySample&) const = default;
};

// Aggregate result of one simulated run. Times and bytes are exact integers.
struct RunMetrics {
  SimTime sim_time_ns = 0;
  ByteCount network_bytes = 0;
  OpCounts counts;
  std::vector<JumpRecord> jump_log;
  std::vector<ResidencySample> residency;

  // Every network byte is attributable to a counted operation.
  bool accounting_identity_holds(const CostModel& c) const {
    ByteCount expect = c.stretch_bytes * counts.stretches +
                       c.page_bytes * (counts.pushes + counts.pulls) +
                       c.jump_bytes * counts.jumps +
                       c.sync_msg_bytes * counts.sync_msgs;
    return network_bytes == expect && counts.remote_faults == counts.pulls;
  }

  bool operator==(const RunMetrics&) const = default;

  // Equality on everything a log replay can reconstruct (residency sampling
  // is a replay-side no-op).
  bool same_totals(const RunMetrics& o) const {
    return sim_time_ns == o.sim_time_ns && network_bytes == o.network_bytes &&
           counts == o.counts && jump_log == o.jump_log;
  }
};

}  // namespace esim
