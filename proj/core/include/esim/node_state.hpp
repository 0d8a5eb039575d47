#pragma once

#include <cstdint>
#include <list>
#include <vector>

#include "esim/types.hpp"

namespace esim {

// Resident set of one node: a bounded second-chance (clock) queue.
//
// The queue front holds the most recently admitted page; eviction scans from
// the rear. A referenced rear page gets its bit cleared and one more trip
// through the queue; the first unreferenced rear page is the victim. With no
// reference bits set this degenerates to plain LRU-from-the-rear.
class NodeState {
 public:
  // footprint_pages bounds the Vpn universe so page lookups are O(1).
  NodeState(NodeId id, std::uint32_t capacity_pages, std::uint32_t footprint_pages,
            double high_watermark, double low_watermark);

  NodeId id() const { return id_; }
  std::uint32_t capacity() const { return capacity_; }
  std::uint32_t resident_count() const { return static_cast<std::uint32_t>(queue_.size()); }
  std::uint32_t free_pages() const { return capacity_ - resident_count(); }
  bool contains(Vpn v) const;
  bool referenced(Vpn v) const;

  // Eviction begins when residency reaches high_trigger() and stops once it
  // is back down to low_target(). For capacity 8 at 0.95/0.90 those are 8
  // and 7; the bands only batch up on larger nodes.
  std::uint32_t high_trigger() const { return high_trigger_; }
  std::uint32_t low_target() const { return low_target_; }
  bool needs_eviction() const { return resident_count() >= high_trigger_; }

  // Inserts at the queue front with the referenced bit set.
  void admit(Vpn v);
  // Drops v without going through victim selection (page is leaving anyway).
  void remove(Vpn v);
  // Marks v referenced. Queue order is untouched.
  void touch(Vpn v);
  // Second-chance scan. Removes and returns the victim.
  // Throws SimError("nothing to evict") on an empty queue.
  Vpn select_victim();

  // Examinations performed by the most recent select_victim call. The scan is
  // bounded by 2 * resident_count().
  std::uint32_t last_scan_examinations() const { return last_scan_examinations_; }

  // Rear-to-front snapshot (eviction order) for audits and tests.
  std::vector<Vpn> eviction_order() const;

  // Test hook: clear the referenced bit without touching queue order.
  void reset_reference(Vpn v);

 private:
  struct Entry {
    Vpn vpn;
    bool referenced;
  };
  using QueueIter = std::list<Entry>::iterator;

  NodeId id_;
  std::uint32_t capacity_;
  std::uint32_t high_trigger_;
  std::uint32_t low_target_;
  std::list<Entry> queue_;          // front = most recent
  std::vector<QueueIter> slot_;     // indexed by Vpn
  std::vector<std::uint8_t> resident_;
  std::uint32_t last_scan_examinations_ = 0;

  QueueIter slot_of(Vpn v);
};

}  // namespace esim
