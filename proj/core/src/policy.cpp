#include "esim/policy.hpp"

namespace esim {

NodeId preferred_node(const PolicyView& view) {
  if (view.fault_tally.empty()) {
    throw SimError("preferred_node: no faults recorded since last jump");
  }
  NodeId best = kNoNode;
  std::uint64_t best_count = 0;
  // std::map iterates in ascending NodeId order, so > keeps the lowest id
  // among ties.
  for (const auto& [node, count] : view.fault_tally) {
    if (count > best_count) {
      best_count = count;
      best = node;
    }
  }
  return best;
}

ThresholdPolicy::ThresholdPolicy(std::uint64_t threshold) : threshold_(threshold) {
  if (threshold_ == 0) throw SimError("jump threshold must be at least 1");
}

PolicyDecision ThresholdPolicy::on_remote_fault(const PolicyView& view) const {
  if (threshold_ == kNeverThreshold) return PolicyDecision::stay();
  if (view.remote_fault_counter < threshold_) return PolicyDecision::stay();
  NodeId target = preferred_node(view);
  if (target == view.exec_node) return PolicyDecision::stay();
  return PolicyDecision::jump_to(target);
}

std::string ThresholdPolicy::name() const {
  if (threshold_ == kNeverThreshold) return "threshold(never)";
  return "threshold(" + std::to_string(threshold_) + ")";
}

std::unique_ptr<JumpPolicy> make_policy(const PolicySpec& spec) {
  if (spec.kind == "threshold") return std::make_unique<ThresholdPolicy>(spec.threshold);
  if (spec.kind == "never") return std::make_unique<NeverJumpPolicy>();
  throw SimError("unknown policy kind '" + spec.kind + "'");
}

}  // namespace esim
