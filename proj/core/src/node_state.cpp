#include "esim/node_state.hpp"

#include <cmath>
#include <string>

namespace esim {

NodeState::NodeState(NodeId id, std::uint32_t capacity_pages,
                     std::uint32_t footprint_pages, double high_watermark,
                     double low_watermark)
    : id_(id), capacity_(capacity_pages) {
  if (capacity_pages == 0) throw SimError("node capacity must be positive");
  if (!(0.0 < low_watermark && low_watermark < high_watermark &&
        high_watermark <= 1.0)) {
    throw SimError("watermarks must satisfy 0 < low < high <= 1");
  }
  high_trigger_ = static_cast<std::uint32_t>(
      std::ceil(high_watermark * static_cast<double>(capacity_pages)));
  if (high_trigger_ == 0) high_trigger_ = 1;
  low_target_ = static_cast<std::uint32_t>(
      std::floor(low_watermark * static_cast<double>(capacity_pages)));
  if (low_target_ >= high_trigger_) low_target_ = high_trigger_ - 1;
  slot_.resize(footprint_pages);
  resident_.assign(footprint_pages, 0);
}

bool NodeState::contains(Vpn v) const {
  return v < resident_.size() && resident_[v] != 0;
}

bool NodeState::referenced(Vpn v) const {
  if (!contains(v)) throw SimError("referenced(): page " + std::to_string(v) + " not resident");
  return slot_[v]->referenced;
}

NodeState::QueueIter NodeState::slot_of(Vpn v) {
  if (!contains(v)) {
    throw SimError("page " + std::to_string(v) + " not resident on node " +
                   std::to_string(id_));
  }
  return slot_[v];
}

void NodeState::admit(Vpn v) {
  if (v >= resident_.size()) throw SimError("admit(): invalid address " + std::to_string(v));
  if (resident_[v]) throw SimError("admit(): page " + std::to_string(v) + " already resident");
  if (resident_count() >= capacity_) {
    throw SimError("admit(): node " + std::to_string(id_) + " is full");
  }
  queue_.push_front(Entry{v, true});
  slot_[v] = queue_.begin();
  resident_[v] = 1;
}

void NodeState::remove(Vpn v) {
  queue_.erase(slot_of(v));
  resident_[v] = 0;
}

void NodeState::touch(Vpn v) {
  slot_of(v)->referenced = true;
}

Vpn NodeState::select_victim() {
  if (queue_.empty()) throw SimError("nothing to evict");
  last_scan_examinations_ = 0;
  for (;;) {
    ++last_scan_examinations_;
    Entry& rear = queue_.back();
    if (rear.referenced) {
      // Second chance: clear and rotate to the front.
      rear.referenced = false;
      queue_.splice(queue_.begin(), queue_, std::prev(queue_.end()));
    } else {
      Vpn v = rear.vpn;
      queue_.pop_back();
      resident_[v] = 0;
      return v;
    }
  }
}

std::vector<Vpn> NodeState::eviction_order() const {
  std::vector<Vpn> out;
  out.reserve(queue_.size());
  for (auto it = queue_.rbegin(); it != queue_.rend(); ++it) out.push_back(it->vpn);
  return out;
}

void NodeState::reset_reference(Vpn v) {
  slot_of(v)->referenced = false;
}

}  // namespace esim
