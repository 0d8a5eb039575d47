#include "esim/engine.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <string>

#include "esim/cluster.hpp"
#include "esim/primitives.hpp"
#include "esim/process.hpp"

namespace esim {

namespace {

// Page owner for every Vpn before replay starts.
std::vector<NodeId> placement_owners(const AccessTrace& trace, const RunConfig& cfg,
                                     const ClusterState& cluster) {
  const std::uint32_t fp = trace.footprint_pages;
  if (cfg.placement.kind == PlacementSpec::Kind::kExplicitMap) {
    const auto& owner = cfg.placement.owner;
    if (owner.size() != fp) {
      throw SimError("explicit placement covers " + std::to_string(owner.size()) +
                     " pages, footprint is " + std::to_string(fp));
    }
    std::vector<std::uint64_t> per_node(cluster.node_count(), 0);
    for (NodeId n : owner) {
      if (n >= cluster.node_count()) {
        throw SimError("explicit placement names unknown node " + std::to_string(n));
      }
      ++per_node[n];
    }
    for (NodeId n = 0; n < cluster.node_count(); ++n) {
      if (per_node[n] > cluster.node(n).capacity()) {
        throw SimError("explicit placement exceeds capacity of node " + std::to_string(n));
      }
    }
    return owner;
  }

  // Home spill: stay on home below the trigger, otherwise receivers take the
  // earliest pages (ascending id, up to capacity) and home keeps the suffix.
  const NodeId home = cfg.home_node;
  std::vector<NodeId> owner(fp, home);
  const NodeState& hn = cluster.node(home);
  if (cluster.node_count() == 1 || fp < hn.high_trigger()) return owner;

  std::uint64_t goal = fp - hn.low_target();
  std::uint32_t next = 0;
  for (NodeId n = 0; n < cluster.node_count() && goal > 0; ++n) {
    if (n == home) continue;
    const std::uint64_t take = std::min<std::uint64_t>(goal, cluster.node(n).capacity());
    for (std::uint64_t i = 0; i < take; ++i) owner[next++] = n;
    goal -= take;
  }
  return owner;
}

}  // namespace

RunResult run(const AccessTrace& trace, const RunConfig& cfg) {
  if (trace.footprint_pages == 0) throw SimError("trace has an empty footprint");
  cfg.costs.validate();
  if (cfg.capacities.empty()) throw SimError("cluster needs at least one node");
  if (cfg.home_node >= cfg.capacities.size()) {
    throw SimError("home node " + std::to_string(cfg.home_node) + " does not exist");
  }
  auto policy = make_policy(cfg.policy);

  ClusterState cluster(cfg.capacities, trace.footprint_pages, cfg.high_watermark,
                       cfg.low_watermark);
  ProcessContext proc;
  proc.home_node = cfg.home_node;
  proc.exec_node = cfg.home_node;

  RunResult result;
  const bool want_log = cfg.record_events || cfg.strict;
  EventLog* log = want_log ? &result.log : nullptr;
  SimState sim(cluster, proc, cfg.costs, result.metrics, log, cfg.strict);

  // Setup: span every node that holds placement pages, queue the region
  // bookkeeping messages the span now owes, then materialize the placement.
  const std::vector<NodeId> owner = placement_owners(trace, cfg, cluster);
  std::vector<std::uint8_t> receives(cluster.node_count(), 0);
  for (NodeId n : owner) receives[n] = 1;
  for (NodeId n = 0; n < cluster.node_count(); ++n) {
    if (n != cfg.home_node && receives[n]) sim.stretch_to(n);
  }
  for (std::uint32_t r = 0; r < trace.region_allocs; ++r) {
    for (std::size_t s = 0; s < proc.span.size(); ++s) sim.queue_sync_msg();
  }
  for (Vpn v = 0; v < trace.footprint_pages; ++v) cluster.admit_initial(v, owner[v]);
  if (cfg.strict) {
    cluster.audit(static_cast<std::int64_t>(result.log.size()) - 1);
    sim.arm_strict_audits();
  }

  // Replay.
  const std::uint64_t total = trace.accesses.size();
  const std::uint64_t stride =
      cfg.residency_samples == 0 ? 0 : std::max<std::uint64_t>(1, total / cfg.residency_samples);
  for (std::uint64_t i = 0; i < total; ++i) {
    const Vpn v = trace.accesses[i];
    if (v >= trace.footprint_pages) {
      throw SimError("trace access " + std::to_string(v) + " outside the footprint");
    }
    if (cluster.lookup(v) == proc.exec_node) {
      sim.local_access(v);
    } else {
      sim.pull(v);
      const PolicyView view{proc.remote_fault_counter, proc.fault_tally, proc.exec_node,
                            proc.home_node, proc.span};
      const PolicyDecision d = policy->on_remote_fault(view);
      if (d.jump) {
        sim.jump(d.target);
        if (cfg.strict && (proc.remote_fault_counter != 0 || !proc.fault_tally.empty() ||
                           proc.pending_sync_msgs != 0)) {
          throw AuditError("jump left stale fault or sync state",
                           static_cast<std::int64_t>(result.log.size()) - 1);
        }
      }
    }
    if (stride != 0 && (i % stride == 0 || i + 1 == total)) {
      ResidencySample s;
      s.at_ns = result.metrics.sim_time_ns;
      s.resident_pages.reserve(cluster.node_count());
      for (NodeId n = 0; n < cluster.node_count(); ++n) {
        s.resident_pages.push_back(cluster.node(n).resident_count());
      }
      result.metrics.residency.push_back(std::move(s));
    }
  }

  if (!result.metrics.accounting_identity_holds(cfg.costs)) {
    throw SimError("network byte accounting identity violated");
  }
  if (want_log) {
    const RunMetrics replayed = result.log.replay(cfg.costs);
    if (!replayed.same_totals(result.metrics)) {
      throw SimError("event log replay disagrees with run metrics");
    }
  }
  result.events_recorded = want_log;
  result.final_exec = proc.exec_node;
  return result;
}

RunResult run_baseline(const AccessTrace& trace, const RunConfig& cfg) {
  RunConfig c = cfg;
  c.policy.kind = "never";
  return run(trace, c);
}

double jump_frequency(const RunMetrics& m) {
  if (m.sim_time_ns <= 0) return 0.0;
  return static_cast<double>(m.counts.jumps) / (static_cast<double>(m.sim_time_ns) / 1e9);
}

ComparisonReport compare(const RunMetrics& a, const RunMetrics& b) {
  ComparisonReport r;
  r.speedup = a.sim_time_ns == 0
                  ? 0.0
                  : static_cast<double>(b.sim_time_ns) / static_cast<double>(a.sim_time_ns);
  if (b.network_bytes == 0) {
    r.traffic_ratio = a.network_bytes == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    r.traffic_ratio = static_cast<double>(a.network_bytes) / static_cast<double>(b.network_bytes);
  }
  r.jumps_a = a.counts.jumps;
  r.jumps_b = b.counts.jumps;
  r.jump_freq_a = jump_frequency(a);
  r.jump_freq_b = jump_frequency(b);
  return r;
}

std::size_t SweepReport::best_index() const {
  if (rows.size() < 2) throw SimError("sweep report has no threshold rows");
  std::size_t best = 0;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    if (rows[i].metrics.sim_time_ns < rows[best].metrics.sim_time_ns) best = i;
  }
  return best;
}

SweepReport sweep_thresholds(const AccessTrace& trace, const RunConfig& base,
                             const std::vector<std::uint64_t>& thresholds) {
  if (thresholds.empty()) throw SimError("threshold sweep needs at least one threshold");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] == 0) throw SimError("threshold sweep: thresholds start at 1");
    if (thresholds[i] == ThresholdPolicy::kNeverThreshold) {
      throw SimError("threshold sweep: the baseline row is added automatically");
    }
    if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
      throw SimError("threshold sweep: thresholds must be strictly ascending");
    }
  }

  std::vector<std::future<RunResult>> futures;
  futures.reserve(thresholds.size() + 1);
  for (const std::uint64_t t : thresholds) {
    futures.push_back(std::async(std::launch::async, [&trace, &base, t] {
      RunConfig c = base;
      c.policy = PolicySpec{"threshold", t};
      return run(trace, c);
    }));
  }
  futures.push_back(std::async(std::launch::async,
                               [&trace, &base] { return run_baseline(trace, base); }));

  SweepReport report;
  report.rows.reserve(futures.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    report.rows.push_back(SweepRow{thresholds[i], futures[i].get().metrics});
  }
  report.rows.push_back(
      SweepRow{ThresholdPolicy::kNeverThreshold, futures.back().get().metrics});
  return report;
}

}  // namespace esim
