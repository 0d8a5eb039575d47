#pragma once

#include <cstdint>
#include <random>

#include "esim/types.hpp"

namespace esim {

// Latency and wire-size accounting for every primitive. Latencies are integer
// nanoseconds, sizes integer bytes; all network accounting stays exact.
//
// Defaults are midpoints of measured single-operation costs on commodity
// gigabit hardware: a stretch is a heavyweight one-time setup step, push and
// pull move one 4 KB page, a jump moves a ~9 KB execution checkpoint and no
// pages, and a local access is ~two orders of magnitude cheaper than a pull.
struct CostModel {
  SimTime stretch_latency_ns = 2'200'000;  // 2.2 ms
  ByteCount stretch_bytes = 9216;          // 9 KB of bootstrap state

  SimTime push_latency_ns = 32'500;  // midpoint of 30..35 us
  SimTime pull_latency_ns = 32'500;  // midpoint of 30..35 us
  ByteCount page_bytes = 4096;       // one page on the wire

  SimTime jump_latency_ns = 50'000;  // midpoint of 45..55 us
  ByteCount jump_bytes = 9216;       // checkpoint: two stack pages + regs

  SimTime local_access_latency_ns = 100;  // 0.1 us

  SimTime sync_msg_latency_ns = 5'000;  // 5 us
  ByteCount sync_msg_bytes = 256;

  static CostModel defaults() { return CostModel{}; }

  // Sensitivity-study variant: push/pull drawn uniformly from 30..35 us and
  // jump from 45..55 us. Byte sizes never vary, so accounting stays exact.
  // Draws use raw engine output so the values are stable across platforms.
  static CostModel sampled(std::uint64_t seed) {
    CostModel m;
    std::mt19937_64 rng(seed);
    m.push_latency_ns = 30'000 + static_cast<SimTime>(rng() % 5001);
    m.pull_latency_ns = 30'000 + static_cast<SimTime>(rng() % 5001);
    m.jump_latency_ns = 45'000 + static_cast<SimTime>(rng() % 10001);
    return m;
  }

  void validate() const {
    if (stretch_latency_ns <= 0 || push_latency_ns <= 0 ||
        pull_latency_ns <= 0 || jump_latency_ns <= 0 ||
        local_access_latency_ns <= 0 || sync_msg_latency_ns <= 0) {
      throw SimError("cost model: all latencies must be positive");
    }
    if (page_bytes == 0) throw SimError("cost model: page_bytes must be positive");
  }
};

}  // namespace esim
