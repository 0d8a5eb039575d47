#include "esim/cluster.hpp"

#include <numeric>
#include <string>

namespace esim {

ClusterState::ClusterState(const std::vector<std::uint32_t>& capacities,
                           std::uint32_t footprint_pages, double high_watermark,
                           double low_watermark)
    : pt_(footprint_pages, kNoNode), placed_(footprint_pages, 0) {
  if (capacities.empty()) throw SimError("cluster needs at least one node");
  if (footprint_pages == 0) throw SimError("footprint must be at least one page");
  nodes_.reserve(capacities.size());
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    nodes_.emplace_back(static_cast<NodeId>(i), capacities[i], footprint_pages,
                        high_watermark, low_watermark);
  }
  if (total_capacity() < footprint_pages) {
    throw SimError("cluster capacity " + std::to_string(total_capacity()) +
                   " pages cannot hold footprint of " +
                   std::to_string(footprint_pages) + " pages");
  }
}

NodeState& ClusterState::node(NodeId n) {
  if (n >= nodes_.size()) throw SimError("no such node " + std::to_string(n));
  return nodes_[n];
}

const NodeState& ClusterState::node(NodeId n) const {
  if (n >= nodes_.size()) throw SimError("no such node " + std::to_string(n));
  return nodes_[n];
}

void ClusterState::admit_initial(Vpn v, NodeId n) {
  if (placed_[v]) throw SimError("page " + std::to_string(v) + " placed twice");
  node(n).admit(v);
  pt_.set_owner(v, n);
  placed_[v] = 1;
}

void ClusterState::move_page(Vpn v, NodeId from, NodeId to) {
  if (from == to) throw SimError("move_page: source equals destination");
  node(from).remove(v);
  node(to).admit(v);
  pt_.set_owner(v, to);
}

void ClusterState::detach_page(Vpn v, NodeId from) { node(from).remove(v); }

void ClusterState::attach_page(Vpn v, NodeId to) {
  node(to).admit(v);
  pt_.set_owner(v, to);
}

NodeId ClusterState::most_free_node(NodeId excluding) const {
  NodeId best = kNoNode;
  std::uint32_t best_free = 0;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    if (n == excluding) continue;
    std::uint32_t free = nodes_[n].free_pages();
    if (free > best_free) {
      best_free = free;
      best = n;
    }
  }
  return best;  // kNoNode when every other node is full
}

std::uint64_t ClusterState::total_capacity() const {
  std::uint64_t sum = 0;
  for (const auto& n : nodes_) sum += n.capacity();
  return sum;
}

std::uint64_t ClusterState::total_resident() const {
  std::uint64_t sum = 0;
  for (const auto& n : nodes_) sum += n.resident_count();
  return sum;
}

void ClusterState::audit(std::int64_t event_index) const {
  std::vector<std::uint8_t> seen(pt_.footprint_pages(), 0);
  for (const auto& n : nodes_) {
    if (n.resident_count() > n.capacity()) {
      throw AuditError("node " + std::to_string(n.id()) + " over capacity",
                       event_index);
    }
    for (Vpn v : n.eviction_order()) {
      if (seen[v]) {
        throw AuditError("page " + std::to_string(v) + " resident on two nodes",
                         event_index);
      }
      seen[v] = 1;
      if (pt_.lookup(v) != n.id()) {
        throw AuditError("page table disagrees with residency of page " +
                             std::to_string(v),
                         event_index);
      }
    }
  }
  for (Vpn v = 0; v < seen.size(); ++v) {
    if (!seen[v]) {
      throw AuditError("page " + std::to_string(v) + " resident nowhere",
                       event_index);
    }
  }
}

}  // namespace esim
