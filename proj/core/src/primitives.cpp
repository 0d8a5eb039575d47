#include "esim/primitives.hpp"

#include <string>

namespace esim {

void SimState::debit(SimTime ns, ByteCount bytes) {
  metrics_.sim_time_ns += ns;
  metrics_.network_bytes += bytes;
}

void SimState::record(EventKind kind, std::uint32_t a, std::uint32_t b) {
  if (!log_) return;
  log_->append(Event{kind, a, b, metrics_.sim_time_ns, metrics_.network_bytes});
  if (strict_ && audits_armed_ && !in_flight_) {
    cluster_.audit(static_cast<std::int64_t>(log_->size()) - 1);
  }
}

void SimState::stretch_to(NodeId n) {
  if (n == proc_.home_node) throw SimError("stretch onto the home node");
  if (proc_.span.count(n)) throw SimError("node " + std::to_string(n) + " already spanned");
  cluster_.node(n);  // existence check
  proc_.span.insert(n);
  metrics_.counts.stretches++;
  debit(costs_.stretch_latency_ns, costs_.stretch_bytes);
  record(EventKind::kStretch, n, 0);
}

void SimState::local_access(Vpn v) {
  NodeId owner = cluster_.lookup(v);
  if (owner == kNoNode) throw SimError("access to unplaced page " + std::to_string(v));
  if (owner != proc_.exec_node) {
    throw SimError("local access to page " + std::to_string(v) + " resident on node " +
                   std::to_string(owner));
  }
  cluster_.node(owner).touch(v);
  metrics_.counts.local_hits++;
  debit(costs_.local_access_latency_ns, 0);
  record(EventKind::kLocalHit, 0, 0);
}

void SimState::drain_to(NodeId n, std::uint32_t target) {
  NodeState& nd = cluster_.node(n);
  while (nd.resident_count() > target) {
    NodeId dest = cluster_.most_free_node(n);
    if (dest == kNoNode) return;  // nowhere to push; live with the overshoot
    // Pages only live inside the span: pushing onto a fresh node extends
    // the address space there first, paying the one-time stretch.
    if (!proc_.spans(dest)) stretch_to(dest);
    Vpn victim = nd.select_victim();
    cluster_.attach_page(victim, dest);
    metrics_.counts.pushes++;
    debit(costs_.push_latency_ns, costs_.page_bytes);
    record(EventKind::kPush, victim, dest);
  }
}

void SimState::relieve_pressure(NodeId n) {
  NodeState& nd = cluster_.node(n);
  if (!nd.needs_eviction()) return;
  drain_to(n, nd.low_target());
}

void SimState::pull(Vpn v) {
  NodeId src = cluster_.lookup(v);
  if (src == kNoNode) throw SimError("access to unplaced page " + std::to_string(v));
  NodeId exec = proc_.exec_node;
  if (src == exec) throw SimError("pull of locally resident page " + std::to_string(v));

  // Source gives the page up first; with the slot it frees, a full cluster
  // still leaves the exec node somewhere to push.
  in_flight_ = true;
  cluster_.detach_page(v, src);
  relieve_pressure(exec);
  cluster_.attach_page(v, exec);
  in_flight_ = false;

  metrics_.counts.pulls++;
  metrics_.counts.remote_faults++;
  proc_.remote_fault_counter++;
  proc_.fault_tally[src]++;
  debit(costs_.pull_latency_ns, costs_.page_bytes);
  record(EventKind::kPull, v, src);
}

void SimState::jump(NodeId target) {
  if (target == proc_.exec_node) throw SimError("jump onto the executing node");
  if (!proc_.spans(target)) {
    throw SimError("jump to unspanned node " + std::to_string(target));
  }
  if (proc_.pending_sync_msgs > 0) {
    std::uint64_t n = proc_.pending_sync_msgs;
    metrics_.counts.sync_msgs += n;
    debit(costs_.sync_msg_latency_ns * static_cast<SimTime>(n), costs_.sync_msg_bytes * n);
    record(EventKind::kSyncFlush, static_cast<std::uint32_t>(n), 0);
    proc_.pending_sync_msgs = 0;
  }
  NodeId from = proc_.exec_node;
  proc_.exec_node = target;
  proc_.remote_fault_counter = 0;
  proc_.fault_tally.clear();
  metrics_.counts.jumps++;
  debit(costs_.jump_latency_ns, costs_.jump_bytes);
  record(EventKind::kJump, from, target);
  metrics_.jump_log.push_back(JumpRecord{metrics_.sim_time_ns, from, target});
}

}  // namespace esim
