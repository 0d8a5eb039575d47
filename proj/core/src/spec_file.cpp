#include "esim/spec_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace esim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct ParseContext {
  std::string origin;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    if (line == 0) throw SimError(origin + ": " + msg);
    throw SimError(origin + ":" + std::to_string(line) + ": " + msg);
  }
};

std::uint64_t parse_u64(const ParseContext& ctx, const std::string& raw) {
  std::string s = raw;
  std::uint64_t mult = 1;
  if (!s.empty()) {
    const char last = s.back();
    if (last == 'K' || last == 'k') mult = 1ull << 10;
    if (last == 'M' || last == 'm') mult = 1ull << 20;
    if (last == 'G' || last == 'g') mult = 1ull << 30;
    if (mult != 1) s.pop_back();
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    ctx.fail("expected an unsigned integer, got '" + raw + "'");
  }
  if (mult != 1 && value > UINT64_MAX / mult) ctx.fail("value overflows: '" + raw + "'");
  return value * mult;
}

std::uint32_t parse_u32(const ParseContext& ctx, const std::string& raw) {
  const std::uint64_t v = parse_u64(ctx, raw);
  if (v > UINT32_MAX) ctx.fail("value too large: '" + raw + "'");
  return static_cast<std::uint32_t>(v);
}

double parse_double(const ParseContext& ctx, const std::string& raw) {
  if (raw.empty()) ctx.fail("expected a number");
  char* end = nullptr;
  const double v = std::strtod(raw.c_str(), &end);
  if (end != raw.c_str() + raw.size()) ctx.fail("expected a number, got '" + raw + "'");
  return v;
}

// "pull_latency_us" -> base "pull_latency", value scaled to integer ns.
bool parse_latency_key(const ParseContext& ctx, const std::string& key,
                       const std::string& value, std::string& base, SimTime& ns) {
  double mult = 0.0;
  if (key.size() > 3 && key.ends_with("_ns")) mult = 1.0;
  if (key.size() > 3 && key.ends_with("_us")) mult = 1e3;
  if (key.size() > 3 && key.ends_with("_ms")) mult = 1e6;
  if (key.size() > 2 && key.ends_with("_s") && !key.ends_with("_ns") && !key.ends_with("_us") &&
      !key.ends_with("_ms")) {
    mult = 1e9;
  }
  if (mult == 0.0) return false;
  base = key.substr(0, key.rfind('_'));
  const double v = parse_double(ctx, value) * mult;
  if (v < 0 || v > 9.2e18) ctx.fail("latency out of range: '" + value + "'");
  const double rounded = std::round(v);
  if (std::abs(v - rounded) > 1e-6) {
    ctx.fail("latency '" + value + "' is not a whole number of nanoseconds");
  }
  ns = static_cast<SimTime>(rounded);
  return true;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const ParseContext& ctx, const std::string& raw, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) ctx.fail("empty entry in list '" + raw + "'");
    out.push_back(parse(ctx, item));
  }
  if (out.empty()) ctx.fail("empty list");
  return out;
}

}  // namespace

ExperimentSpec parse_spec_text(const std::string& text, const std::string& origin) {
  ExperimentSpec spec;
  ParseContext ctx{origin, 0};

  std::string section;
  bool workload_named = false;
  std::uint32_t nodes = 0;
  std::uint32_t node_pages = 0;
  bool capacities_explicit = false;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++ctx.line;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') ctx.fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "experiment" && section != "cluster" && section != "costs" &&
          section != "workload" && section != "policy" && section != "sweep" &&
          section != "depth_sweep") {
        ctx.fail("unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) ctx.fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) ctx.fail("missing key");
    if (value.empty()) ctx.fail("missing value for '" + key + "'");
    if (section.empty()) ctx.fail("key '" + key + "' appears before any [section]");

    if (section == "experiment") {
      if (key == "name") {
        spec.name = value;
      } else {
        ctx.fail("unknown key '" + key + "' in [experiment]");
      }
    } else if (section == "cluster") {
      if (key == "nodes") {
        nodes = parse_u32(ctx, value);
      } else if (key == "node_pages") {
        node_pages = parse_u32(ctx, value);
      } else if (key == "capacities") {
        spec.config.capacities = parse_list<std::uint32_t>(ctx, value, parse_u32);
        capacities_explicit = true;
      } else if (key == "high_watermark") {
        spec.config.high_watermark = parse_double(ctx, value);
      } else if (key == "low_watermark") {
        spec.config.low_watermark = parse_double(ctx, value);
      } else if (key == "home_node") {
        spec.config.home_node = parse_u32(ctx, value);
      } else {
        ctx.fail("unknown key '" + key + "' in [cluster]");
      }
    } else if (section == "costs") {
      std::string base;
      SimTime ns = 0;
      if (parse_latency_key(ctx, key, value, base, ns)) {
        auto& c = spec.config.costs;
        if (base == "local_latency" || base == "local_access_latency") {
          c.local_access_latency_ns = ns;
        } else if (base == "pull_latency") {
          c.pull_latency_ns = ns;
        } else if (base == "push_latency") {
          c.push_latency_ns = ns;
        } else if (base == "jump_latency") {
          c.jump_latency_ns = ns;
        } else if (base == "stretch_latency") {
          c.stretch_latency_ns = ns;
        } else if (base == "sync_msg_latency") {
          c.sync_msg_latency_ns = ns;
        } else {
          ctx.fail("unknown latency key '" + key + "' in [costs]");
        }
      } else if (key == "page_bytes") {
        spec.config.costs.page_bytes = parse_u64(ctx, value);
      } else if (key == "jump_bytes") {
        spec.config.costs.jump_bytes = parse_u64(ctx, value);
      } else if (key == "stretch_bytes") {
        spec.config.costs.stretch_bytes = parse_u64(ctx, value);
      } else if (key == "sync_msg_bytes") {
        spec.config.costs.sync_msg_bytes = parse_u64(ctx, value);
      } else {
        ctx.fail("unknown key '" + key + "' in [costs]");
      }
    } else if (section == "workload") {
      if (key == "name") {
        const auto& names = workload_names();
        bool known = false;
        for (const auto& n : names) known = known || n == value;
        if (!known) ctx.fail("unknown workload '" + value + "'");
        spec.workload = value;
        spec.params = desk_defaults(value);
        workload_named = true;
      } else if (key == "trace_file") {
        spec.trace_file = value;
      } else {
        if (!workload_named) {
          ctx.fail("set 'name' before workload parameter '" + key + "'");
        }
        if (key == "elements") {
          spec.params.elements = parse_u64(ctx, value);
        } else if (key == "element_bytes") {
          spec.params.element_bytes = parse_u32(ctx, value);
        } else if (key == "seed") {
          spec.params.seed = parse_u64(ctx, value);
        } else if (key == "repeats") {
          spec.params.repeats = parse_u32(ctx, value);
        } else if (key == "dfs_depth") {
          spec.params.dfs_depth = parse_u32(ctx, value);
        } else if (key == "dfs_branching") {
          spec.params.dfs_branching = parse_u32(ctx, value);
        } else if (key == "connectivity") {
          spec.params.connectivity = parse_double(ctx, value);
        } else if (key == "band") {
          spec.params.band = parse_u32(ctx, value);
        } else if (key == "value_range") {
          spec.params.value_range = parse_u32(ctx, value);
        } else if (key == "blocks") {
          spec.params.blocks = parse_u32(ctx, value);
        } else {
          ctx.fail("unknown key '" + key + "' in [workload]");
        }
      }
    } else if (section == "policy") {
      if (key == "kind") {
        if (value != "threshold" && value != "never") {
          ctx.fail("policy kind must be 'threshold' or 'never'");
        }
        spec.config.policy.kind = value;
      } else if (key == "threshold") {
        spec.config.policy.threshold = parse_u64(ctx, value);
      } else {
        ctx.fail("unknown key '" + key + "' in [policy]");
      }
    } else if (section == "sweep") {
      if (key == "thresholds") {
        spec.sweep_thresholds = parse_list<std::uint64_t>(ctx, value, parse_u64);
      } else {
        ctx.fail("unknown key '" + key + "' in [sweep]");
      }
    } else if (section == "depth_sweep") {
      if (key == "depths") {
        spec.depth_sweep_depths = parse_list<std::uint32_t>(ctx, value, parse_u32);
      } else if (key == "threshold") {
        spec.depth_sweep_threshold = parse_u64(ctx, value);
      } else {
        ctx.fail("unknown key '" + key + "' in [depth_sweep]");
      }
    }
  }

  if (nodes != 0 || node_pages != 0) {
    if (capacities_explicit) {
      ctx.line = 0;
      ctx.fail("give either nodes/node_pages or capacities, not both");
    }
    if (nodes == 0 || node_pages == 0) {
      ctx.line = 0;
      ctx.fail("nodes and node_pages must be set together");
    }
    spec.config.capacities.assign(nodes, node_pages);
  }
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path);
}

AccessTrace resolve_trace(const ExperimentSpec& spec) {
  if (!spec.trace_file.empty()) return read_trace_file(spec.trace_file);
  if (!spec.workload.empty()) return generate_workload(spec.workload, spec.params);
  throw SimError("spec '" + spec.name + "' has neither a workload nor a trace_file");
}

std::vector<std::uint64_t> parse_threshold_list(const std::string& raw,
                                                const std::string& origin) {
  ParseContext ctx{origin, 0};
  return parse_list<std::uint64_t>(ctx, raw, parse_u64);
}

}  // namespace esim
