#pragma once

#include <cstdint>
#include <map>
#include <set>

#include "esim/types.hpp"

namespace esim {

// Execution state of the one simulated process. Exactly one node executes it
// at any instant; the span is the set of extra nodes its address space has
// been extended onto.
struct ProcessContext {
  NodeId home_node = 0;
  NodeId exec_node = 0;
  std::set<NodeId> span;  // never contains home_node

  // Faults observed since the last jump, total and per source node. Both
  // reset together when a jump lands.
  std::uint64_t remote_fault_counter = 0;
  std::map<NodeId, std::uint64_t> fault_tally;

  std::uint64_t pending_sync_msgs = 0;

  bool spans(NodeId n) const { return n == home_node || span.count(n) != 0; }
};

}  // namespace esim
