#include <benchmark/benchmark.h>

#include "esim/engine.hpp"
#include "esim/node_state.hpp"
#include "esim/workloads.hpp"

namespace {

// Victim selection cost on a full queue whose rear pages are all referenced,
// forcing the full clear-and-rotate scan.
void BM_SecondChanceVictim(benchmark::State& state) {
  const std::uint32_t cap = static_cast<std::uint32_t>(state.range(0));
  esim::NodeState node(0, cap, cap + 1, 0.95, 0.90);
  for (std::uint32_t v = 0; v < cap; ++v) node.admit(v);
  for (auto _ : state) {
    const esim::Vpn victim = node.select_victim();
    benchmark::DoNotOptimize(victim);
    node.admit(victim);
  }
}
BENCHMARK(BM_SecondChanceVictim)->Arg(256)->Arg(4096);

// End-to-end engine throughput on a two-node crawl that keeps both the pull
// path and the eviction path busy.
void BM_EngineLinearTrace(benchmark::State& state) {
  esim::WorkloadParams p = esim::desk_defaults("linear_search");
  p.elements = 64 * 512;  // 64 pages
  p.repeats = 2;
  const esim::AccessTrace trace = esim::generate_workload("linear_search", p);
  esim::RunConfig cfg;
  cfg.capacities = {32, 32};
  cfg.policy = esim::PolicySpec{"threshold", 8};
  for (auto _ : state) {
    auto result = esim::run(trace, cfg);
    benchmark::DoNotOptimize(result.metrics.sim_time_ns);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(trace.accesses.size()));
}
BENCHMARK(BM_EngineLinearTrace);

void BM_TraceGen(benchmark::State& state) {
  esim::WorkloadParams p = esim::desk_defaults("count_sort");
  p.elements = 512 * 256;  // 256 input pages
  for (auto _ : state) {
    const esim::AccessTrace trace = esim::generate_workload("count_sort", p);
    benchmark::DoNotOptimize(trace.accesses.data());
  }
}
BENCHMARK(BM_TraceGen);

}  // namespace

BENCHMARK_MAIN();
