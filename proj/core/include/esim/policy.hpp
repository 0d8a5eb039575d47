#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "esim/types.hpp"

namespace esim {

// Read-only snapshot handed to the jump policy on every remote fault.
struct PolicyView {
  std::uint64_t remote_fault_counter;
  const std::map<NodeId, std::uint64_t>& fault_tally;
  NodeId exec_node;
  NodeId home_node;
  const std::set<NodeId>& span;
};

struct PolicyDecision {
  bool jump = false;
  NodeId target = kNoNode;

  static PolicyDecision stay() { return {}; }
  static PolicyDecision jump_to(NodeId n) { return {true, n}; }
  bool operator==(const PolicyDecision&) const = default;
};

// Where the faults have been coming from: the node with the highest fault
// tally since the last jump, ties to the lowest id. Requires at least one
// recorded fault.
NodeId preferred_node(const PolicyView& view);

class JumpPolicy {
 public:
  virtual ~JumpPolicy() = default;
  // Pure: never mutates, same view gives the same decision. A jump decision
  // never targets the node the process is already on.
  virtual PolicyDecision on_remote_fault(const PolicyView& view) const = 0;
  virtual std::string name() const = 0;
};

// Jump once the fault counter reaches the threshold, to the preferred node.
// kNeverThreshold keeps the counter from ever firing, which is exactly the
// swap-only baseline.
class ThresholdPolicy : public JumpPolicy {
 public:
  static constexpr std::uint64_t kNeverThreshold = UINT64_MAX;

  explicit ThresholdPolicy(std::uint64_t threshold);
  PolicyDecision on_remote_fault(const PolicyView& view) const override;
  std::string name() const override;
  std::uint64_t threshold() const { return threshold_; }

 private:
  std::uint64_t threshold_;
};

class NeverJumpPolicy : public JumpPolicy {
 public:
  PolicyDecision on_remote_fault(const PolicyView&) const override {
    return PolicyDecision::stay();
  }
  std::string name() const override { return "never"; }
};

struct PolicySpec {
  std::string kind = "threshold";  // "threshold" | "never"
  std::uint64_t threshold = 512;

  bool operator==(const PolicySpec&) const = default;
};

std::unique_ptr<JumpPolicy> make_policy(const PolicySpec& spec);

}  // namespace esim
