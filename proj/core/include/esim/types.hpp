#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace esim {

// Virtual page number within one simulated process address space.
using Vpn = std::uint32_t;
// Index of a machine in the cluster.
using NodeId = std::uint32_t;
// Simulated time in integer nanoseconds.
using SimTime = std::int64_t;
using ByteCount = std::uint64_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

// Page granularity of the simulated address space. Transfer sizes are a
// cost-model knob; the address space granularity is not.
inline constexpr std::uint32_t kPageBytes = 4096;

// User-facing simulation fault: bad address, bad config, impossible operation.
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// A consistency audit failed. event_index is the position in the access
// stream at which the violation was observed (-1 when outside replay).
class AuditError : public SimError {
 public:
  AuditError(const std::string& what, std::int64_t event_index)
      : SimError(what + " (event index " + std::to_string(event_index) + ")"),
        event_index_(event_index) {}
  std::int64_t event_index() const { return event_index_; }

 private:
  std::int64_t event_index_;
};

}  // namespace esim
