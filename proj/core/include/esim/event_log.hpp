#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "esim/cost_model.hpp"
#include "esim/metrics.hpp"
#include "esim/types.hpp"

namespace esim {

enum class EventKind : std::uint8_t {
  kLocalHit,   // no args
  kPull,       // a = vpn, b = source node
  kPush,       // a = vpn, b = destination node
  kJump,       // a = from node, b = to node
  kSyncFlush,  // a = flushed message count
  kStretch,    // a = new span member
};

// One completed operation. cum_time_ns/cum_bytes are the running totals
// after the operation, so the log alone reproduces the metrics.
struct Event {
  EventKind kind;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  SimTime cum_time_ns = 0;
  ByteCount cum_bytes = 0;

  bool operator==(const Event&) const = default;
};

class EventLog {
 public:
  void append(Event e) { events_.push_back(e); }
  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool operator==(const EventLog&) const = default;

  // One event per line: kind, args, cum_time_ns, cum_bytes.
  void write_text(std::ostream& os) const;
  static EventLog read_text(std::istream& is);

  // Recomputes run totals from the log, checking per-event debits and the
  // flush-before-jump ordering along the way. Throws SimError on a log that
  // no cost model could have produced.
  RunMetrics replay(const CostModel& costs) const;

 private:
  std::vector<Event> events_;
};

}  // namespace esim
