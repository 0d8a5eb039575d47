#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esim/types.hpp"

namespace esim {

// A recorded page-access sequence. Consecutive duplicate pages are already
// coalesced by the generators, so each entry is a page boundary crossing.
// region_allocs counts the address-space regions the workload mapped and
// workload_id names the generator run that produced the trace; both ride
// along in memory only, the on-disk format carries just the accesses.
struct AccessTrace {
  std::uint32_t footprint_pages = 0;
  std::uint32_t region_allocs = 0;
  std::string workload_id;
  std::vector<Vpn> accesses;

  bool operator==(const AccessTrace& o) const {
    return footprint_pages == o.footprint_pages && accesses == o.accesses;
  }
};

// On-disk layout, all little-endian: four u64 words (magic, version,
// footprint_pages, access count) then one u32 per access.
inline constexpr std::uint64_t kTraceMagic = 0x304352544D495345ULL;  // "ESIMTRC0"
inline constexpr std::uint64_t kTraceVersion = 1;

void write_trace_file(const std::string& path, const AccessTrace& trace);
AccessTrace read_trace_file(const std::string& path);

}  // namespace esim
