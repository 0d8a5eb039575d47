#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esim/trace.hpp"
#include "esim/types.hpp"

namespace esim {

// Knobs shared by the six generators. Each generator reads the subset it
// understands; desk_defaults() fills in the per-workload standard sizes.
struct WorkloadParams {
  std::uint64_t elements = 0;
  std::uint32_t element_bytes = 8;
  std::uint64_t seed = 42;
  std::uint32_t repeats = 1;

  // dfs
  std::uint32_t dfs_depth = 10;
  std::uint32_t dfs_branching = 0;  // 0 = smallest branching that reaches dfs_depth

  // dijkstra
  double connectivity = 0.5;
  std::uint32_t band = 16;

  // count_sort
  std::uint32_t value_range = 512;

  // block_sort
  std::uint32_t blocks = 8;
};

// The six workload names accepted by generate_workload.
const std::vector<std::string>& workload_names();

// Standard desk-scale parameters (2 nodes of 4096 pages) for a named workload.
WorkloadParams desk_defaults(const std::string& name);

// Runs the named reference algorithm over a virtual address space and records
// the page of every load/store to its principal data structures. Consecutive
// duplicate pages are coalesced. Pure function of (name, params).
AccessTrace generate_workload(const std::string& name, const WorkloadParams& params);

// One-line identity string: name plus the parameters that shaped the trace.
std::string workload_id(const std::string& name, const WorkloadParams& params);

// Records page touches for a set of byte-addressed regions laid out
// back to back in one virtual address space.
class TraceBuilder {
 public:
  using RegionId = std::uint32_t;

  RegionId alloc(std::uint64_t bytes);
  // Touch every page overlapped by [offset, offset+len) within a region.
  void touch(RegionId r, std::uint64_t offset, std::uint64_t len = 1);
  // Touch element index i of an array of element_bytes-sized records.
  void touch_element(RegionId r, std::uint64_t index, std::uint32_t element_bytes);

  Vpn region_start(RegionId r) const { return regions_[r].start; }
  std::uint32_t region_pages(RegionId r) const { return regions_[r].pages; }
  std::uint32_t footprint_pages() const { return next_page_; }

  void reserve(std::uint64_t n);
  AccessTrace take(std::string id);

 private:
  struct Region {
    Vpn start;
    std::uint32_t pages;
    std::uint64_t bytes;
  };
  std::vector<Region> regions_;
  std::vector<Vpn> accesses_;
  std::uint32_t next_page_ = 0;
};

}  // namespace esim
