#pragma once

#include <cstdint>
#include <vector>

#include "esim/node_state.hpp"
#include "esim/page_table.hpp"
#include "esim/types.hpp"

namespace esim {

// The machine pool plus the global page table. All page movement goes through
// move_page/admit_initial so the two structures can never drift apart.
class ClusterState {
 public:
  ClusterState(const std::vector<std::uint32_t>& capacities,
               std::uint32_t footprint_pages, double high_watermark,
               double low_watermark);

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
  NodeState& node(NodeId n);
  const NodeState& node(NodeId n) const;
  const ElasticPageTable& page_table() const { return pt_; }
  std::uint32_t footprint_pages() const { return pt_.footprint_pages(); }

  NodeId lookup(Vpn v) const { return pt_.lookup(v); }

  // First placement of a page that is not resident anywhere yet.
  void admit_initial(Vpn v, NodeId n);
  // Moves a resident page between nodes; the destination admits it at the
  // queue front with the referenced bit set.
  void move_page(Vpn v, NodeId from, NodeId to);

  // In-flight transfer window for pulls: the faulted page leaves its source
  // before the destination makes room, so an otherwise-full cluster always
  // has a push destination. The page table keeps pointing at the old owner
  // until attach_page; audits never run inside the window.
  void detach_page(Vpn v, NodeId from);
  void attach_page(Vpn v, NodeId to);

  // Picks the push destination: most free pages wins, ties to the lowest id,
  // the excluded node (and full nodes) never qualify. kNoNode when nothing fits.
  NodeId most_free_node(NodeId excluding) const;

  std::uint64_t total_capacity() const;
  std::uint64_t total_resident() const;

  // Full consistency audit: capacity bounds, single residency, page table
  // totality, and queue/page-table agreement. Throws AuditError.
  void audit(std::int64_t event_index) const;

 private:
  std::vector<NodeState> nodes_;
  ElasticPageTable pt_;
  std::vector<std::uint8_t> placed_;  // admit_initial done for this Vpn
};

}  // namespace esim
