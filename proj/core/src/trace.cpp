#include "esim/trace.hpp"

#include <array>
#include <fstream>

namespace esim {

namespace {

void put_u64(std::ostream& os, std::uint64_t x) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  os.write(b.data(), 8);
}

void put_u32(std::ostream& os, std::uint32_t x) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  os.write(b.data(), 4);
}

bool get_u64(std::istream& is, std::uint64_t& x) {
  std::array<char, 8> b;
  if (!is.read(b.data(), 8)) return false;
  x = 0;
  for (int i = 0; i < 8; ++i) x |= std::uint64_t(static_cast<unsigned char>(b[i])) << (8 * i);
  return true;
}

bool get_u32(std::istream& is, std::uint32_t& x) {
  std::array<char, 4> b;
  if (!is.read(b.data(), 4)) return false;
  x = 0;
  for (int i = 0; i < 4; ++i) x |= std::uint32_t(static_cast<unsigned char>(b[i])) << (8 * i);
  return true;
}

void check_bounds(const AccessTrace& t) {
  for (std::size_t i = 0; i < t.accesses.size(); ++i) {
    if (t.accesses[i] >= t.footprint_pages) {
      throw SimError("trace access " + std::to_string(t.accesses[i]) +
                     " at index " + std::to_string(i) + " is outside the footprint of " +
                     std::to_string(t.footprint_pages) + " pages");
    }
  }
}

}  // namespace

void write_trace_file(const std::string& path, const AccessTrace& trace) {
  if (trace.footprint_pages == 0) throw SimError("trace has no footprint");
  check_bounds(trace);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SimError("cannot open '" + path + "' for writing");
  put_u64(os, kTraceMagic);
  put_u64(os, kTraceVersion);
  put_u64(os, trace.footprint_pages);
  put_u64(os, trace.accesses.size());
  for (Vpn v : trace.accesses) put_u32(os, v);
  os.flush();
  if (!os) throw SimError("write to '" + path + "' failed");
}

AccessTrace read_trace_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SimError("cannot open '" + path + "'");
  std::uint64_t magic = 0, version = 0, footprint = 0, count = 0;
  if (!get_u64(is, magic) || !get_u64(is, version) || !get_u64(is, footprint) ||
      !get_u64(is, count)) {
    throw SimError("'" + path + "': truncated header");
  }
  if (magic != kTraceMagic) throw SimError("'" + path + "' is not a trace file");
  if (version != kTraceVersion) {
    throw SimError("'" + path + "': unsupported trace version " + std::to_string(version));
  }
  if (footprint == 0 || footprint > 0xffffffffULL) {
    throw SimError("'" + path + "': bad footprint " + std::to_string(footprint));
  }
  AccessTrace t;
  t.footprint_pages = static_cast<std::uint32_t>(footprint);
  t.accesses.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t v = 0;
    if (!get_u32(is, v)) {
      throw SimError("'" + path + "': truncated at access " + std::to_string(i) + " of " +
                     std::to_string(count));
    }
    t.accesses.push_back(v);
  }
  check_bounds(t);
  return t;
}

}  // namespace esim
