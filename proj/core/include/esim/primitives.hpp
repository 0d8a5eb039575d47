#pragma once

#include "esim/cluster.hpp"
#include "esim/cost_model.hpp"
#include "esim/event_log.hpp"
#include "esim/metrics.hpp"
#include "esim/process.hpp"
#include "esim/types.hpp"

namespace esim {

// The four scaling operations plus local access, tied to one cluster and one
// process. Every call debits time/bytes into the shared RunMetrics and, when
// a log is attached, appends one event per completed operation. The engine
// owns the state and drives accesses through here.
class SimState {
 public:
  // strict requires a log (audit failures carry the offending event index).
  // The audit runs after every recorded event except pushes inside a pull's
  // transfer window, where the in-flight page is intentionally off-node.
  SimState(ClusterState& cluster, ProcessContext& proc, const CostModel& costs,
           RunMetrics& metrics, EventLog* log = nullptr, bool strict = false)
      : cluster_(cluster), proc_(proc), costs_(costs), metrics_(metrics), log_(log),
        strict_(strict) {
    if (strict_ && !log_) throw SimError("strict mode requires an event log");
  }

  // Extends the address space onto node n. One-time cost per node.
  void stretch_to(NodeId n);

  // Access to a page resident on the executing node.
  void local_access(Vpn v);

  // Access to a page resident elsewhere. The faulted page leaves its source
  // first, then the executing node sheds pages if it is at its trigger
  // (victims go to the most-free other node), then the page lands here.
  // Bumps the fault counter and the per-source tally.
  void pull(Vpn v);

  // Moves execution to a spanned node. Pays any queued sync messages as one
  // flush, switches exec, resets the fault counter and tally, pays the jump
  // cost. No pages move.
  void jump(NodeId target);

  // Queues one cross-node bookkeeping message; the next jump pays for it.
  void queue_sync_msg() { ++proc_.pending_sync_msgs; }

  // Turns on per-event audits (strict mode only). Called once setup has
  // placed every page; audits before that would see an untotal page table.
  void arm_strict_audits() { audits_armed_ = true; }

  // Sheds pages from node n down to its low target, but only once it has
  // reached its trigger. Stops early if no other node has room.
  void relieve_pressure(NodeId n);

  // Pushes pages off node n until residency <= target or nowhere to push.
  void drain_to(NodeId n, std::uint32_t target);

  const ClusterState& cluster() const { return cluster_; }
  const ProcessContext& process() const { return proc_; }

 private:
  void debit(SimTime ns, ByteCount bytes);
  void record(EventKind kind, std::uint32_t a, std::uint32_t b);

  ClusterState& cluster_;
  ProcessContext& proc_;
  const CostModel& costs_;
  RunMetrics& metrics_;
  EventLog* log_;
  bool strict_ = false;
  bool audits_armed_ = false;
  bool in_flight_ = false;
};

}  // namespace esim
