#include "esim/event_log.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace esim {

namespace {

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::kLocalHit: return "hit";
    case EventKind::kPull: return "pull";
    case EventKind::kPush: return "push";
    case EventKind::kJump: return "jump";
    case EventKind::kSyncFlush: return "sync";
    case EventKind::kStretch: return "stretch";
  }
  return "?";
}

int arg_count(EventKind k) {
  switch (k) {
    case EventKind::kLocalHit: return 0;
    case EventKind::kSyncFlush:
    case EventKind::kStretch: return 1;
    default: return 2;
  }
}

}  // namespace

void EventLog::write_text(std::ostream& os) const {
  for (const Event& e : events_) {
    os << kind_name(e.kind);
    if (arg_count(e.kind) >= 1) os << ' ' << e.a;
    if (arg_count(e.kind) >= 2) os << ' ' << e.b;
    os << ' ' << e.cum_time_ns << ' ' << e.cum_bytes << '\n';
  }
}

EventLog EventLog::read_text(std::istream& is) {
  EventLog log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    Event e{};
    if (kind == "hit") e.kind = EventKind::kLocalHit;
    else if (kind == "pull") e.kind = EventKind::kPull;
    else if (kind == "push") e.kind = EventKind::kPush;
    else if (kind == "jump") e.kind = EventKind::kJump;
    else if (kind == "sync") e.kind = EventKind::kSyncFlush;
    else if (kind == "stretch") e.kind = EventKind::kStretch;
    else throw SimError("events line " + std::to_string(lineno) + ": unknown kind '" + kind + "'");
    if (arg_count(e.kind) >= 1) ls >> e.a;
    if (arg_count(e.kind) >= 2) ls >> e.b;
    ls >> e.cum_time_ns >> e.cum_bytes;
    if (!ls) throw SimError("events line " + std::to_string(lineno) + ": malformed event");
    log.append(e);
  }
  return log;
}

RunMetrics EventLog::replay(const CostModel& costs) const {
  RunMetrics m;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const Event& e = events_[i];
    switch (e.kind) {
      case EventKind::kLocalHit:
        m.sim_time_ns += costs.local_access_latency_ns;
        m.counts.local_hits++;
        break;
      case EventKind::kPull:
        m.sim_time_ns += costs.pull_latency_ns;
        m.network_bytes += costs.page_bytes;
        m.counts.pulls++;
        m.counts.remote_faults++;
        break;
      case EventKind::kPush:
        m.sim_time_ns += costs.push_latency_ns;
        m.network_bytes += costs.page_bytes;
        m.counts.pushes++;
        break;
      case EventKind::kJump:
        m.sim_time_ns += costs.jump_latency_ns;
        m.network_bytes += costs.jump_bytes;
        m.counts.jumps++;
        m.jump_log.push_back(JumpRecord{m.sim_time_ns, e.a, e.b});
        break;
      case EventKind::kSyncFlush:
        // Dirty-state messages drain only on the way into a jump.
        if (i + 1 >= events_.size() || events_[i + 1].kind != EventKind::kJump) {
          throw SimError("sync flush at event " + std::to_string(i) +
                         " is not followed by a jump");
        }
        m.sim_time_ns += costs.sync_msg_latency_ns * static_cast<SimTime>(e.a);
        m.network_bytes += costs.sync_msg_bytes * e.a;
        m.counts.sync_msgs += e.a;
        break;
      case EventKind::kStretch:
        m.sim_time_ns += costs.stretch_latency_ns;
        m.network_bytes += costs.stretch_bytes;
        m.counts.stretches++;
        break;
    }
    if (e.cum_time_ns != m.sim_time_ns || e.cum_bytes != m.network_bytes) {
      throw SimError("event " + std::to_string(i) +
                     ": cumulative totals disagree with replay");
    }
  }
  return m;
}

}  // namespace esim
