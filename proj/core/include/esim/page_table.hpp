#pragma once

#include <string>
#include <vector>

#include "esim/types.hpp"

namespace esim {

// Total map Vpn -> owning node. Every page of the footprint is resident on
// exactly one node at all times; movement updates this map atomically with
// the per-node queues (see ClusterState).
class ElasticPageTable {
 public:
  ElasticPageTable(std::uint32_t footprint_pages, NodeId initial)
      : owner_(footprint_pages, initial) {}

  std::uint32_t footprint_pages() const {
    return static_cast<std::uint32_t>(owner_.size());
  }

  NodeId lookup(Vpn v) const {
    if (v >= owner_.size()) {
      throw SimError("invalid address: page " + std::to_string(v) +
                     " outside footprint of " + std::to_string(owner_.size()) +
                     " pages");
    }
    return owner_[v];
  }

  void set_owner(Vpn v, NodeId n) {
    if (v >= owner_.size()) {
      throw SimError("invalid address: page " + std::to_string(v));
    }
    owner_[v] = n;
  }

 private:
  std::vector<NodeId> owner_;
};

}  // namespace esim
