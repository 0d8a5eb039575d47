#include "esim/workloads.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <random>
#include <utility>

namespace esim {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

// Portable uniform draw in [0,1); uniform_real_distribution is not
// bit-reproducible across standard libraries.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// 1 + b + b^2 + ... + b^depth, saturating at u64 max.
std::uint64_t full_tree_count(std::uint64_t b, std::uint32_t depth) {
  std::uint64_t total = 1;
  std::uint64_t level = 1;
  for (std::uint32_t d = 0; d < depth; ++d) {
    if (level > kU64Max / b) return kU64Max;
    level *= b;
    if (total > kU64Max - level) return kU64Max;
    total += level;
  }
  return total;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw SimError(msg);
}

void self_check(bool ok, const std::string& what) {
  if (!ok) throw SimError("generator self-check failed: " + what);
}

std::vector<std::uint64_t> random_values(std::uint64_t n, std::mt19937_64& rng) {
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = rng();
  return v;
}

// Sequential scan of an element array, one full pass per repeat. The probe
// value is absent so every pass examines every element.
AccessTrace gen_linear(const WorkloadParams& p, const std::string& id) {
  require(p.elements >= 1, "linear_search requires at least one element");
  std::mt19937_64 rng(p.seed);
  std::vector<std::uint64_t> data = random_values(p.elements, rng);
  for (auto& x : data) x &= ~1ull;  // keep odd probe values impossible

  TraceBuilder tb;
  auto arr = tb.alloc(p.elements * p.element_bytes);
  tb.reserve(static_cast<std::uint64_t>(tb.region_pages(arr)) * p.repeats + 16);

  const std::uint64_t probe = 1;  // odd, never stored
  for (std::uint32_t rep = 0; rep < p.repeats; ++rep) {
    bool found = false;
    for (std::uint64_t i = 0; i < p.elements; ++i) {
      tb.touch_element(arr, i, p.element_bytes);
      if (data[i] == probe) found = true;
    }
    self_check(!found, "linear probe unexpectedly present");
  }
  return tb.take(id);
}

// Depth-first traversal of a random tree laid out in construction (BFS)
// order. Level sizes are drawn around the branching factor, every level keeps
// at least one node and the bottom level absorbs the remainder, so the tree
// has exactly n nodes and depth exactly d. Children of a node are the
// contiguous slice of the next level apportioned to it, which keeps the
// layout in creation order while the traversal runs branch by branch.
// The walk mirrors the recursive formulation: each stack frame holds a node
// and a resume cursor over its children, so returning from a subtree re-reads
// the parent's frame and record before the scan moves to the next child. The
// stack is itself an in-memory array and its frames are traced.
AccessTrace gen_dfs(const WorkloadParams& p, std::uint32_t branching, const std::string& id) {
  const std::uint64_t n = p.elements;
  const std::uint32_t d = p.dfs_depth;
  const std::uint64_t b = branching;
  require(n > d, "dfs needs more elements than its depth");

  std::mt19937_64 rng(p.seed);
  std::vector<std::uint64_t> level_lo(d + 1);
  std::vector<std::uint64_t> level_sz(d + 1);
  level_lo[0] = 0;
  level_sz[0] = 1;
  std::uint64_t next = 1;
  for (std::uint32_t k = 1; k <= d; ++k) {
    const std::uint64_t remaining = n - next;
    const std::uint64_t reserve = d - k;  // one node for each deeper level
    std::uint64_t want = remaining;       // bottom level absorbs the rest
    if (k < d) {
      const double f = static_cast<double>(b) * (0.75 + 0.5 * unit_draw(rng));
      want = static_cast<std::uint64_t>(static_cast<double>(level_sz[k - 1]) * f);
      want = std::clamp<std::uint64_t>(want, 1, remaining - reserve);
    }
    level_lo[k] = next;
    level_sz[k] = want;
    next += want;
  }
  self_check(next == n, "dfs level construction must place every node");

  const std::uint64_t frame_cap = static_cast<std::uint64_t>(d) + 2;
  TraceBuilder tb;
  auto tree = tb.alloc(n * p.element_bytes);
  auto seen = tb.alloc(n);        // one discovery byte per node
  auto parent = tb.alloc(n * 8);  // DFS forest: predecessor per node
  auto order = tb.alloc(n * 8);   // preorder index per node
  auto fin = tb.alloc(n * 8);     // postorder (finishing) index per node
  auto stk = tb.alloc(frame_cap * 16);  // frame = node plus resume cursor
  tb.reserve(n * (4 * b + 9) * p.repeats + 64);

  std::vector<std::uint64_t> frame_node(frame_cap);
  std::vector<std::uint64_t> frame_next(frame_cap);
  std::vector<std::uint8_t> seen_bits(n);
  for (std::uint32_t rep = 0; rep < p.repeats; ++rep) {
    // The program re-zeroes its discovery array before each traversal.
    std::fill(seen_bits.begin(), seen_bits.end(), 0);
    for (std::uint64_t i = 0; i < n; ++i) tb.touch_element(seen, i, 1);
    std::uint64_t visited = 0;
    std::uint64_t finished = 0;
    std::uint64_t max_sp = 1;
    tb.touch_element(seen, 0, 1);
    seen_bits[0] = 1;
    tb.touch_element(parent, 0, 8);
    std::uint64_t sp = 0;
    tb.touch_element(stk, sp, 16);
    frame_node[sp] = 0;
    frame_next[sp] = 0;
    ++sp;
    while (sp > 0) {
      const std::uint64_t fi = sp - 1;  // frame index doubles as node depth
      // Entering or resuming an activation re-reads its frame and record.
      tb.touch_element(stk, fi, 16);
      const std::uint64_t u = frame_node[fi];
      tb.touch_element(tree, u, p.element_bytes);
      std::uint64_t child_lo = 0;
      std::uint64_t child_cnt = 0;
      if (fi < d) {
        const std::uint64_t pos = u - level_lo[fi];
        const std::uint64_t base = level_lo[fi + 1];
        child_lo = base + pos * level_sz[fi + 1] / level_sz[fi];
        child_cnt = base + (pos + 1) * level_sz[fi + 1] / level_sz[fi] - child_lo;
      }
      if (frame_next[fi] == 0) {
        tb.touch_element(order, u, 8);  // preorder index assigned on entry
        ++visited;
      }
      if (frame_next[fi] == child_cnt) {
        tb.touch_element(fin, u, 8);  // postorder index assigned on exit
        ++finished;
        --sp;
        continue;
      }
      const std::uint64_t c = child_lo + frame_next[fi]++;
      tb.touch_element(seen, c, 1);
      if (!seen_bits[c]) {
        seen_bits[c] = 1;
        tb.touch_element(parent, c, 8);
        tb.touch_element(stk, sp, 16);
        frame_node[sp] = c;
        frame_next[sp] = 0;
        ++sp;
        max_sp = std::max(max_sp, sp);
      }
    }
    self_check(visited == n, "dfs did not visit every node");
    self_check(finished == n, "dfs did not finish every node");
    self_check(max_sp == static_cast<std::uint64_t>(d) + 1, "dfs did not reach its depth");
  }
  return tb.take(id);
}

// Dijkstra over a banded directed graph stored as a dense adjacency matrix:
// vertex i always links to i+1 (when connectivity > 0) and to each j in
// (i+1, i+band] with probability = connectivity. find-min scans the visited
// and distance arrays; relaxation reads one band-wide row slice.
AccessTrace gen_dijkstra(const WorkloadParams& p, const std::string& id) {
  require(p.elements >= 1, "dijkstra requires at least one vertex");
  require(p.band >= 1, "dijkstra band must be at least 1");
  require(p.connectivity >= 0.0 && p.connectivity <= 1.0,
          "dijkstra connectivity must lie in [0, 1]");
  const std::uint64_t v_count = p.elements;
  const double conn = p.connectivity;

  std::mt19937_64 rng(p.seed);
  std::vector<std::uint32_t> m(v_count * v_count, 0);
  for (std::uint64_t i = 0; i + 1 < v_count; ++i) {
    if (conn > 0.0) m[i * v_count + i + 1] = 1 + static_cast<std::uint32_t>(rng() % 9);
    const std::uint64_t hi = std::min(i + p.band, v_count - 1);
    for (std::uint64_t j = i + 2; j <= hi; ++j) {
      if (unit_draw(rng) < conn) m[i * v_count + j] = 1 + static_cast<std::uint32_t>(rng() % 9);
    }
  }

  TraceBuilder tb;
  auto dist = tb.alloc(v_count * 8);
  auto vis = tb.alloc(v_count * 1);
  auto prev = tb.alloc(v_count * 4);
  auto mat = tb.alloc(v_count * v_count * p.element_bytes);
  tb.reserve(v_count * v_count / 2 + v_count * 8);

  const std::uint64_t inf = kU64Max;
  std::vector<std::uint64_t> d(v_count, inf);
  std::vector<std::uint8_t> done(v_count, 0);
  for (std::uint64_t j = 0; j < v_count; ++j) tb.touch_element(dist, j, 8);
  for (std::uint64_t j = 0; j < v_count; ++j) tb.touch_element(prev, j, 4);
  for (std::uint64_t j = 0; j < v_count; ++j) tb.touch_element(vis, j, 1);
  d[0] = 0;
  tb.touch_element(dist, 0, 8);

  std::uint64_t popped = 0;
  std::uint64_t last_best = 0;
  for (std::uint64_t iter = 0; iter < v_count; ++iter) {
    std::uint64_t u = v_count;
    std::uint64_t best = inf;
    for (std::uint64_t j = 0; j < v_count; ++j) {
      tb.touch_element(vis, j, 1);
      if (done[j]) continue;
      tb.touch_element(dist, j, 8);
      if (d[j] < best) {
        best = d[j];
        u = j;
      }
    }
    if (u == v_count) break;  // every remaining vertex is unreachable
    self_check(best >= last_best, "dijkstra pop order not monotone");
    last_best = best;
    done[u] = 1;
    ++popped;
    tb.touch_element(vis, u, 1);
    tb.touch_element(dist, u, 8);
    const std::uint64_t hi = std::min(u + p.band, v_count - 1);
    for (std::uint64_t j = u + 1; j <= hi; ++j) {
      tb.touch_element(mat, u * v_count + j, p.element_bytes);
      const std::uint32_t w = m[u * v_count + j];
      if (w == 0) continue;
      tb.touch_element(dist, j, 8);
      if (d[u] + w < d[j]) {
        d[j] = d[u] + w;
        tb.touch_element(dist, j, 8);
        tb.touch_element(prev, j, 4);
      }
    }
  }
  if (conn > 0.0) {
    self_check(popped == v_count, "dijkstra failed to settle every vertex");
    self_check(d[v_count - 1] != inf, "dijkstra chain vertex unreachable");
  } else {
    self_check(popped == std::min<std::uint64_t>(1, v_count), "dijkstra visited an unreachable vertex");
  }
  return tb.take(id);
}

struct QuickSortTracer {
  std::vector<std::uint64_t>& v;
  TraceBuilder& tb;
  TraceBuilder::RegionId region;
  std::uint32_t eb;

  void touch(std::uint64_t i) { tb.touch_element(region, i, eb); }

  void insertion(std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t k = lo + 1; k <= hi; ++k) {
      touch(k);
      const std::uint64_t key = v[k];
      std::uint64_t m2 = k;
      while (m2 > lo) {
        touch(m2 - 1);
        if (v[m2 - 1] <= key) break;
        v[m2] = v[m2 - 1];
        --m2;
      }
      v[m2] = key;
    }
  }

  void sort(std::uint64_t lo0, std::uint64_t hi0) {
    constexpr std::uint64_t kCutoff = 32;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pending;
    pending.emplace_back(lo0, hi0);
    while (!pending.empty()) {
      auto [lo, hi] = pending.back();
      pending.pop_back();
      while (hi > lo && hi - lo >= kCutoff) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        touch(lo);
        touch(mid);
        touch(hi);
        // Median-of-three: order v[lo] <= v[mid] <= v[hi].
        if (v[mid] < v[lo]) std::swap(v[mid], v[lo]);
        if (v[hi] < v[lo]) std::swap(v[hi], v[lo]);
        if (v[hi] < v[mid]) std::swap(v[hi], v[mid]);
        const std::uint64_t pivot = v[mid];
        std::uint64_t i = lo;
        std::uint64_t j = hi;
        while (i <= j) {
          touch(i);
          while (v[i] < pivot) {
            ++i;
            touch(i);
          }
          touch(j);
          while (v[j] > pivot) {
            --j;
            touch(j);
          }
          if (i <= j) {
            std::swap(v[i], v[j]);
            ++i;
            if (j == 0) break;
            --j;
          }
        }
        // Recurse into the smaller side, iterate on the larger.
        if (j > lo && j - lo < hi - i) {
          pending.emplace_back(i, hi);
          hi = j;
        } else if (i < hi) {
          if (j > lo) pending.emplace_back(lo, j);
          lo = i;
        } else if (j > lo) {
          hi = j;
        } else {
          lo = hi;  // both sides trivial
        }
      }
      if (hi > lo) insertion(lo, hi);
    }
  }
};

// Phase 1 quicksorts each of `blocks` equal slices of X in place; phase 2
// merges the sorted slices into Y. Merge comparisons use head values cached
// in registers, so only head advances and output writes touch memory.
AccessTrace gen_block_sort(const WorkloadParams& p, const std::string& id) {
  require(p.elements >= 2, "block_sort requires at least two elements");
  require(p.blocks >= 1, "block_sort requires at least one block");
  require(p.elements % p.blocks == 0, "block_sort elements must divide evenly into blocks");
  std::mt19937_64 rng(p.seed);
  std::vector<std::uint64_t> vals = random_values(p.elements, rng);

  TraceBuilder tb;
  auto x = tb.alloc(p.elements * p.element_bytes);
  auto y = tb.alloc(p.elements * p.element_bytes);
  tb.reserve(p.elements * 8 + 64);

  std::vector<std::uint64_t> v = vals;
  const std::uint64_t per = p.elements / p.blocks;
  QuickSortTracer qs{v, tb, x, p.element_bytes};
  for (std::uint32_t blk = 0; blk < p.blocks; ++blk) {
    const std::uint64_t lo = static_cast<std::uint64_t>(blk) * per;
    qs.sort(lo, lo + per - 1);
    self_check(std::is_sorted(v.begin() + lo, v.begin() + lo + per), "block not sorted");
  }

  std::vector<std::uint64_t> heads(p.blocks), ends(p.blocks), cached(p.blocks);
  std::vector<std::uint64_t> out;
  out.reserve(p.elements);
  for (std::uint32_t b2 = 0; b2 < p.blocks; ++b2) {
    heads[b2] = static_cast<std::uint64_t>(b2) * per;
    ends[b2] = heads[b2] + per;
    tb.touch_element(x, heads[b2], p.element_bytes);
    cached[b2] = v[heads[b2]];
  }
  for (std::uint64_t k = 0; k < p.elements; ++k) {
    std::uint32_t win = p.blocks;
    std::uint64_t best = kU64Max;
    for (std::uint32_t b2 = 0; b2 < p.blocks; ++b2) {
      if (heads[b2] < ends[b2] && cached[b2] <= best) {
        best = cached[b2];
        win = b2;
      }
    }
    self_check(win < p.blocks, "merge ran out of input");
    tb.touch_element(y, k, p.element_bytes);
    out.push_back(best);
    ++heads[win];
    if (heads[win] < ends[win]) {
      tb.touch_element(x, heads[win], p.element_bytes);
      cached[win] = v[heads[win]];
    }
  }
  std::sort(vals.begin(), vals.end());
  self_check(out == vals, "merged output is not the sorted input");
  return tb.take(id);
}

// In-place binary heap sort: sift-up insertions build a max-heap, then each
// extract swaps the root with the shrinking tail and sifts it back down.
AccessTrace gen_heap_sort(const WorkloadParams& p, const std::string& id) {
  require(p.elements >= 2, "heap_sort requires at least two elements");
  std::mt19937_64 rng(p.seed);
  std::vector<std::uint64_t> vals = random_values(p.elements, rng);

  TraceBuilder tb;
  auto h = tb.alloc(p.elements * p.element_bytes);
  tb.reserve(p.elements * 18 + 64);

  std::vector<std::uint64_t> v = vals;
  const std::uint64_t n = p.elements;
  for (std::uint64_t i = 1; i < n; ++i) {
    std::uint64_t k = i;
    tb.touch_element(h, k, p.element_bytes);
    while (k > 0) {
      const std::uint64_t parent = (k - 1) / 2;
      tb.touch_element(h, parent, p.element_bytes);
      if (v[parent] >= v[k]) break;
      std::swap(v[parent], v[k]);
      k = parent;
    }
  }
  for (std::uint64_t last = n - 1; last >= 1; --last) {
    tb.touch_element(h, 0, p.element_bytes);
    tb.touch_element(h, last, p.element_bytes);
    std::swap(v[0], v[last]);
    std::uint64_t k = 0;
    while (true) {
      const std::uint64_t l = 2 * k + 1;
      if (l >= last) break;
      std::uint64_t c = l;
      tb.touch_element(h, l, p.element_bytes);
      if (l + 1 < last) {
        tb.touch_element(h, l + 1, p.element_bytes);
        if (v[l + 1] > v[l]) c = l + 1;
      }
      if (v[k] >= v[c]) break;
      std::swap(v[k], v[c]);
      k = c;
    }
  }
  std::sort(vals.begin(), vals.end());
  self_check(v == vals, "heap sort output is not the sorted input");
  return tb.take(id);
}

// Counting sort over a small value range: pass 1 tallies every input value,
// pass 2 emits the sorted output straight from the counts.
AccessTrace gen_count_sort(const WorkloadParams& p, const std::string& id) {
  require(p.elements >= 1, "count_sort requires at least one element");
  require(p.value_range >= 1, "count_sort value range must be at least 1");
  std::mt19937_64 rng(p.seed);
  std::vector<std::uint32_t> vals(p.elements);
  for (auto& x : vals) x = static_cast<std::uint32_t>(rng() % p.value_range);

  TraceBuilder tb;
  auto in = tb.alloc(p.elements * p.element_bytes);
  auto cnt = tb.alloc(static_cast<std::uint64_t>(p.value_range) * 8);
  auto out = tb.alloc(p.elements * p.element_bytes);
  tb.reserve(p.elements * 3 + p.value_range + 64);

  std::vector<std::uint64_t> counts(p.value_range, 0);
  for (std::uint64_t i = 0; i < p.elements; ++i) {
    tb.touch_element(in, i, p.element_bytes);
    tb.touch_element(cnt, vals[i], 8);
    ++counts[vals[i]];
  }
  std::vector<std::uint32_t> emitted;
  emitted.reserve(p.elements);
  std::uint64_t k = 0;
  for (std::uint32_t val = 0; val < p.value_range; ++val) {
    tb.touch_element(cnt, val, 8);
    for (std::uint64_t c = 0; c < counts[val]; ++c) {
      tb.touch_element(out, k, p.element_bytes);
      ++k;
      emitted.push_back(val);
    }
  }
  self_check(k == p.elements, "count sort emitted a different element count");
  std::sort(vals.begin(), vals.end());
  self_check(std::equal(emitted.begin(), emitted.end(), vals.begin(), vals.end()),
             "count sort output is not the sorted input");
  return tb.take(id);
}

std::uint32_t resolve_dfs_branching(const WorkloadParams& p) {
  require(p.dfs_depth >= 1, "dfs depth must be at least 1");
  require(p.elements >= 2, "dfs requires at least two nodes");
  std::uint64_t b = p.dfs_branching;
  if (b == 0) {
    for (b = 2; full_tree_count(b, p.dfs_depth) < p.elements; ++b) {
      require(b < (1u << 20), "dfs branching search overflow");
    }
  }
  require(b >= 1, "dfs branching must be at least 1");
  return static_cast<std::uint32_t>(b);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& workload_names() {
  static const std::vector<std::string> names = {
      "linear_search", "dfs", "dijkstra", "block_sort", "heap_sort", "count_sort",
  };
  return names;
}

WorkloadParams desk_defaults(const std::string& name) {
  WorkloadParams p;
  if (name == "linear_search") {
    p.elements = 4194304;  // 8192 pages of u64
    p.element_bytes = 8;
    p.repeats = 3;
  } else if (name == "dfs") {
    p.elements = 420000;  // 48B records, discovery bytes, three index arrays: 7489 pages
    p.element_bytes = 48;
    p.dfs_depth = 18;
    p.repeats = 2;
  } else if (name == "dijkstra") {
    p.elements = 2030;  // dense u32 matrix: 4025 pages + 7 array pages
    p.element_bytes = 4;
    p.connectivity = 0.5;
    p.band = 16;
  } else if (name == "block_sort") {
    p.elements = 1203200;  // X and Y regions of 2350 pages each
    p.element_bytes = 8;
    p.blocks = 8;
  } else if (name == "heap_sort") {
    p.elements = 2150400;  // 4200 pages
    p.element_bytes = 8;
  } else if (name == "count_sort") {
    p.elements = 1900544;  // input and output of 3712 pages each, 1 count page
    p.element_bytes = 8;
    p.value_range = 512;
  } else {
    throw SimError("unknown workload: " + name);
  }
  return p;
}

std::string workload_id(const std::string& name, const WorkloadParams& p) {
  std::string id = name + "(elements=" + std::to_string(p.elements) +
                   ",element_bytes=" + std::to_string(p.element_bytes) +
                   ",seed=" + std::to_string(p.seed);
  if (name == "linear_search") {
    id += ",repeats=" + std::to_string(p.repeats);
  } else if (name == "dfs") {
    id += ",repeats=" + std::to_string(p.repeats) + ",depth=" + std::to_string(p.dfs_depth) +
          ",branching=" + std::to_string(p.dfs_branching);
  } else if (name == "dijkstra") {
    id += ",connectivity=" + format_double(p.connectivity) + ",band=" + std::to_string(p.band);
  } else if (name == "block_sort") {
    id += ",blocks=" + std::to_string(p.blocks);
  } else if (name == "count_sort") {
    id += ",value_range=" + std::to_string(p.value_range);
  }
  return id + ")";
}

AccessTrace generate_workload(const std::string& name, const WorkloadParams& params) {
  require(params.element_bytes >= 1, "element_bytes must be at least 1");
  require(params.repeats >= 1, "repeats must be at least 1");
  if (name == "linear_search") {
    return gen_linear(params, workload_id(name, params));
  }
  if (name == "dfs") {
    WorkloadParams p = params;
    p.dfs_branching = resolve_dfs_branching(params);
    return gen_dfs(p, p.dfs_branching, workload_id(name, p));
  }
  if (name == "dijkstra") {
    return gen_dijkstra(params, workload_id(name, params));
  }
  if (name == "block_sort") {
    return gen_block_sort(params, workload_id(name, params));
  }
  if (name == "heap_sort") {
    return gen_heap_sort(params, workload_id(name, params));
  }
  if (name == "count_sort") {
    return gen_count_sort(params, workload_id(name, params));
  }
  throw SimError("unknown workload: " + name);
}

TraceBuilder::RegionId TraceBuilder::alloc(std::uint64_t bytes) {
  if (bytes == 0) throw SimError("region allocation of zero bytes");
  const std::uint64_t pages = (bytes + kPageBytes - 1) / kPageBytes;
  if (pages > std::numeric_limits<std::uint32_t>::max() - next_page_) {
    throw SimError("region allocation overflows the page address space");
  }
  regions_.push_back(Region{next_page_, static_cast<std::uint32_t>(pages), bytes});
  next_page_ += static_cast<std::uint32_t>(pages);
  return static_cast<RegionId>(regions_.size() - 1);
}

void TraceBuilder::touch(RegionId r, std::uint64_t offset, std::uint64_t len) {
  if (r >= regions_.size()) throw SimError("touch on unknown region");
  const Region& reg = regions_[r];
  if (len == 0 || offset + len > reg.bytes) {
    throw SimError("touch outside region bounds");
  }
  const Vpn first = reg.start + static_cast<Vpn>(offset / kPageBytes);
  const Vpn last = reg.start + static_cast<Vpn>((offset + len - 1) / kPageBytes);
  for (Vpn pg = first; pg <= last; ++pg) {
    if (accesses_.empty() || accesses_.back() != pg) accesses_.push_back(pg);
  }
}

void TraceBuilder::touch_element(RegionId r, std::uint64_t index, std::uint32_t element_bytes) {
  touch(r, index * element_bytes, element_bytes);
}

void TraceBuilder::reserve(std::uint64_t n) { accesses_.reserve(n); }

AccessTrace TraceBuilder::take(std::string id) {
  if (next_page_ == 0) throw SimError("trace has no regions");
  AccessTrace t;
  t.footprint_pages = next_page_;
  t.region_allocs = static_cast<std::uint32_t>(regions_.size());
  t.workload_id = std::move(id);
  t.accesses = std::move(accesses_);
  return t;
}

}  // namespace esim
