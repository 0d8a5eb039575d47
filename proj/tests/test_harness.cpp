#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "esim/harness.hpp"

using namespace esim;
namespace fs = std::filesystem;

namespace {

int next_tmp_id() {
  static int id = 0;
  return ++id;
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("esim_harness_test_" + std::to_string(::getpid()) +
                                       "_" + std::to_string(next_tmp_id()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

// Swaps the stream's buffer so harness chatter lands here, not in test output.
struct Capture {
  std::ostream& stream;
  std::stringstream buf;
  std::streambuf* saved;
  explicit Capture(std::ostream& s) : stream(s), saved(s.rdbuf(buf.rdbuf())) {}
  ~Capture() { stream.rdbuf(saved); }
  std::string text() const { return buf.str(); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

std::string freq6(double f) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", f);
  return buf;
}

// Mirrors the harness row layout so runs can be checked against the engine.
std::string expect_row(const std::string& workload, const std::string& threshold,
                       const RunMetrics& m) {
  return workload + "," + threshold + "," + std::to_string(m.sim_time_ns) + "," +
         std::to_string(m.network_bytes) + "," + std::to_string(m.counts.pulls) + "," +
         std::to_string(m.counts.pushes) + "," + std::to_string(m.counts.jumps) + "," +
         freq6(jump_frequency(m));
}

// 16 pages over two 12-page nodes: spills at placement, faults both ways.
const char* kTinySpec =
    "[experiment]\n"
    "name = tiny\n"
    "\n"
    "[cluster]\n"
    "capacities = 12,12\n"
    "home_node = 0\n"
    "\n"
    "[workload]\n"
    "name = linear_search\n"
    "elements = 16\n"
    "element_bytes = 4096\n"
    "repeats = 4\n"
    "\n"
    "[policy]\n"
    "kind = threshold\n"
    "threshold = 3\n"
    "\n"
    "[sweep]\n"
    "thresholds = 2,4,8\n";

const char* kDfsSpec =
    "[experiment]\n"
    "name = dfs_tiny\n"
    "\n"
    "[cluster]\n"
    "capacities = 64,64\n"
    "\n"
    "[workload]\n"
    "name = dfs\n"
    "elements = 40\n"
    "repeats = 1\n"
    "\n"
    "[policy]\n"
    "kind = threshold\n"
    "threshold = 4\n"
    "\n"
    "[depth_sweep]\n"
    "depths = 2,3\n"
    "threshold = 4\n";

CliOptions options_for(const TempDir& tmp, const std::string& spec_name) {
  CliOptions opt;
  opt.spec_path = tmp.path(spec_name);
  opt.out_dir = tmp.path("out");
  return opt;
}

}  // namespace

TEST_CASE("run writes the metrics csv keyed by the experiment name") {
  TempDir tmp;
  write_file(tmp.path("tiny.cfg"), kTinySpec);
  CliOptions opt = options_for(tmp, "tiny.cfg");

  Capture out(std::cout);
  REQUIRE(cmd_run(opt) == 0);

  const std::string csv_path = tmp.path("out/tiny.metrics.csv");
  REQUIRE(fs::exists(csv_path));
  CHECK_FALSE(fs::exists(tmp.path("out/tiny.events.log")));
  CHECK(out.text().find("tiny.metrics.csv") != std::string::npos);
  CHECK(out.text().find("sim_time_ns=") != std::string::npos);

  const std::vector<std::string> lines = lines_of(read_file(csv_path));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kMetricsCsvHeader);

  // The row must agree with a direct engine run of the same spec.
  const ExperimentSpec spec = parse_spec_file(opt.spec_path);
  const RunResult direct = run(resolve_trace(spec), spec.config);
  CHECK(lines[1] == expect_row("linear_search", "3", direct.metrics));
}

TEST_CASE("baseline gets its own stem and a never threshold") {
  TempDir tmp;
  write_file(tmp.path("tiny.cfg"), kTinySpec);
  CliOptions opt = options_for(tmp, "tiny.cfg");

  Capture out(std::cout);
  REQUIRE(cmd_baseline(opt) == 0);

  const std::vector<std::string> lines =
      lines_of(read_file(tmp.path("out/tiny.baseline.metrics.csv")));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kMetricsCsvHeader);

  const ExperimentSpec spec = parse_spec_file(opt.spec_path);
  const RunResult direct = run_baseline(resolve_trace(spec), spec.config);
  CHECK(lines[1] == expect_row("linear_search", "never", direct.metrics));
  CHECK(direct.metrics.counts.jumps == 0);
}

TEST_CASE("strict run leaves an events log that verify accepts") {
  TempDir tmp;
  write_file(tmp.path("tiny.cfg"), kTinySpec);
  CliOptions opt = options_for(tmp, "tiny.cfg");
  opt.strict = true;

  Capture out(std::cout);
  REQUIRE(cmd_run(opt) == 0);
  const std::string events = tmp.path("out/tiny.events.log");
  const std::string metrics = tmp.path("out/tiny.metrics.csv");
  REQUIRE(fs::exists(events));

  CHECK(cmd_verify(CliOptions{}, events, metrics) == 0);
  CHECK(out.text().find("verified: " + events + " reproduces " + metrics) !=
        std::string::npos);
}

TEST_CASE("verify catches a metrics row that disagrees with its events") {
  TempDir tmp;
  write_file(tmp.path("tiny.cfg"), kTinySpec);
  CliOptions opt = options_for(tmp, "tiny.cfg");
  opt.strict = true;
  {
    Capture out(std::cout);
    REQUIRE(cmd_run(opt) == 0);
  }
  const std::string events = tmp.path("out/tiny.events.log");
  const std::string metrics = tmp.path("out/tiny.metrics.csv");

  std::vector<std::string> lines = lines_of(read_file(metrics));
  REQUIRE(lines.size() == 2);
  std::vector<std::string> fields = fields_of(lines[1]);
  REQUIRE(fields.size() == 8);

  SUBCASE("pull count off by one") {
    fields[4] = std::to_string(std::stoull(fields[4]) + 1);
  }
  SUBCASE("simulated time off by one") {
    fields[2] = std::to_string(std::stoull(fields[2]) + 1);
  }
  std::string row = fields[0];
  for (std::size_t i = 1; i < fields.size(); ++i) row += "," + fields[i];
  write_file(metrics, lines[0] + "\n" + row + "\n");

  Capture err(std::cerr);
  CHECK(cmd_verify(CliOptions{}, events, metrics) == 3);
  CHECK(err.text().find("mismatch: metrics say") != std::string::npos);
}

TEST_CASE("sweep emits ascending thresholds then the baseline row, stably") {
  TempDir tmp;
  write_file(tmp.path("tiny.cfg"), kTinySpec);
  CliOptions opt = options_for(tmp, "tiny.cfg");

  Capture out(std::cout);
  REQUIRE(cmd_sweep(opt) == 0);
  CHECK(out.text().find("best_threshold=") != std::string::npos);

  const std::string csv = read_file(tmp.path("out/tiny.sweep.csv"));
  const std::vector<std::string> lines = lines_of(csv);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == kMetricsCsvHeader);
  const std::vector<std::string> want_th = {"2", "4", "8", "never"};
  for (std::size_t i = 0; i < want_th.size(); ++i) {
    const std::vector<std::string> fields = fields_of(lines[i + 1]);
    REQUIRE(fields.size() == 8);
    CHECK(fields[0] == "linear_search");
    CHECK(fields[1] == want_th[i]);
  }

  // Same spec, fresh directory: the bytes must not move.
  opt.out_dir = tmp.path("out2");
  REQUIRE(cmd_sweep(opt) == 0);
  CHECK(read_file(tmp.path("out2/tiny.sweep.csv")) == csv);
}

TEST_CASE("a thresholds flag overrides the spec sweep list") {
  TempDir tmp;
  write_file(tmp.path("tiny.cfg"), kTinySpec);
  CliOptions opt = options_for(tmp, "tiny.cfg");
  opt.thresholds = {5};

  Capture out(std::cout);
  REQUIRE(cmd_sweep(opt) == 0);
  const std::vector<std::string> lines =
      lines_of(read_file(tmp.path("out/tiny.sweep.csv")));
  REQUIRE(lines.size() == 3);
  CHECK(fields_of(lines[1])[1] == "5");
  CHECK(fields_of(lines[2])[1] == "never");
}

TEST_CASE("report condenses sweep csvs and recomputes the headline ratios") {
  TempDir tmp;
  fs::create_directories(tmp.path("out"));
  const std::string header = std::string(kMetricsCsvHeader) + "\n";
  // jump_freq in the input is ignored; report derives it from jumps and time.
  write_file(tmp.path("out/hand.sweep.csv"), header +
                                                 "wl,2,200,1000,5,5,3,0.0\n"
                                                 "wl,4,100,600,3,3,2,0.0\n"
                                                 "wl,never,400,2000,9,9,0,0.000000\n");
  write_file(tmp.path("out/tie.sweep.csv"), header +
                                                "wl,8,100,50,1,1,1,0.0\n"
                                                "wl,2,100,80,1,1,1,0.0\n"
                                                "wl,never,300,100,2,2,0,0.0\n");

  CliOptions opt;
  opt.out_dir = tmp.path("out");
  Capture out(std::cout);
  REQUIRE(cmd_report(opt) == 0);
  CHECK(out.text() ==
        "experiment,workload,best_threshold,sim_time_ns,jumps,jump_freq,speedup,"
        "traffic_ratio\n"
        "hand,wl,4,100,2,20000000.000000,4.000,0.300\n"
        "tie,wl,2,100,1,10000000.000000,3.000,0.800\n");
}

TEST_CASE("report exit codes and malformed inputs") {
  TempDir tmp;
  CliOptions opt;

  SUBCASE("directory without sweeps") {
    fs::create_directories(tmp.path("empty"));
    opt.out_dir = tmp.path("empty");
    Capture err(std::cerr);
    CHECK(cmd_report(opt) == 2);
    CHECK(err.text().find("report: no .sweep.csv files in") != std::string::npos);
  }
  SUBCASE("path that is not a directory") {
    write_file(tmp.path("plain.txt"), "x\n");
    opt.out_dir = tmp.path("plain.txt");
    Capture err(std::cerr);
    CHECK(cmd_report(opt) == 2);
    CHECK(err.text().find("report: not a directory:") != std::string::npos);
  }
  SUBCASE("wrong header") {
    write_file(tmp.path("x.sweep.csv"), "bogus\n");
    opt.out_dir = tmp.dir.string();
    CHECK_THROWS_WITH(cmd_report(opt),
                      (tmp.path("x.sweep.csv") + ": unexpected CSV header").c_str());
  }
  SUBCASE("short row") {
    write_file(tmp.path("x.sweep.csv"), std::string(kMetricsCsvHeader) + "\na,b,c\n");
    opt.out_dir = tmp.dir.string();
    CHECK_THROWS_WITH(cmd_report(opt),
                      (tmp.path("x.sweep.csv") + ":2: malformed row").c_str());
  }
  SUBCASE("non-numeric threshold") {
    write_file(tmp.path("x.sweep.csv"),
               std::string(kMetricsCsvHeader) + "\nwl,xx,1,2,3,4,5,6\n");
    opt.out_dir = tmp.dir.string();
    CHECK_THROWS_WITH(cmd_report(opt),
                      (tmp.path("x.sweep.csv") + ":2: malformed number").c_str());
  }
  SUBCASE("baseline row alone") {
    write_file(tmp.path("x.sweep.csv"),
               std::string(kMetricsCsvHeader) + "\nwl,never,1,2,3,4,5,6\n");
    opt.out_dir = tmp.dir.string();
    CHECK_THROWS_WITH(
        cmd_report(opt),
        (tmp.path("x.sweep.csv") + ": needs at least one threshold row and a baseline row")
            .c_str());
  }
}

TEST_CASE("gen-trace round trips through a trace_file replay") {
  TempDir tmp;
  write_file(tmp.path("tiny.cfg"), kTinySpec);
  CliOptions opt = options_for(tmp, "tiny.cfg");
  {
    Capture out(std::cout);
    REQUIRE(cmd_gen_trace(opt) == 0);
    CHECK(out.text().find("footprint_pages=16") != std::string::npos);
  }
  const std::string trace_path = tmp.path("out/tiny.trace");
  const AccessTrace loaded = read_trace_file(trace_path);
  const ExperimentSpec spec = parse_spec_file(opt.spec_path);
  const AccessTrace generated = resolve_trace(spec);
  CHECK(loaded.footprint_pages == 16);
  CHECK(loaded.accesses == generated.accesses);

  // Trace files carry no workload id, so the metrics row falls back to the
  // experiment name with commas scrubbed.
  write_file(tmp.path("replay.cfg"),
             "[experiment]\n"
             "name = re,play\n"
             "[cluster]\n"
             "capacities = 12,12\n"
             "[workload]\n"
             "trace_file = " +
                 trace_path +
                 "\n"
                 "[policy]\n"
                 "kind = threshold\n"
                 "threshold = 3\n");
  CliOptions replay = options_for(tmp, "replay.cfg");
  Capture out(std::cout);
  REQUIRE(cmd_run(replay) == 0);
  const std::vector<std::string> replay_lines =
      lines_of(read_file(tmp.path("out/re,play.metrics.csv")));
  REQUIRE(replay_lines.size() == 2);
  // Replays drop region metadata (files keep accesses only), so the row is
  // checked against an engine run of the loaded trace, not the generator's.
  const ExperimentSpec replay_spec = parse_spec_file(replay.spec_path);
  const RunResult direct = run(loaded, replay_spec.config);
  CHECK(replay_lines[1] == expect_row("re_play", "3", direct.metrics));
}

TEST_CASE("depth sweep pairs an elastic and a baseline row per depth") {
  TempDir tmp;
  write_file(tmp.path("dfs.cfg"), kDfsSpec);
  CliOptions opt = options_for(tmp, "dfs.cfg");

  Capture out(std::cout);
  REQUIRE(cmd_depth_sweep(opt) == 0);
  const std::vector<std::string> lines =
      lines_of(read_file(tmp.path("out/dfs_tiny.depth.csv")));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "depth,threshold,sim_time_ns,network_bytes,pulls,pushes,jumps,jump_freq");
  const std::vector<std::pair<std::string, std::string>> want = {
      {"2", "4"}, {"2", "never"}, {"3", "4"}, {"3", "never"}};
  for (std::size_t i = 0; i < want.size(); ++i) {
    const std::vector<std::string> fields = fields_of(lines[i + 1]);
    REQUIRE(fields.size() == 8);
    CHECK(fields[0] == want[i].first);
    CHECK(fields[1] == want[i].second);
  }
}

TEST_CASE("depth sweep rejects unsuitable specs") {
  TempDir tmp;
  SUBCASE("workload is not dfs") {
    write_file(tmp.path("tiny.cfg"), kTinySpec);
    CliOptions opt = options_for(tmp, "tiny.cfg");
    CHECK_THROWS_WITH(cmd_depth_sweep(opt),
                      "depth-sweep needs the dfs workload, spec has 'linear_search'");
  }
  SUBCASE("depths must ascend") {
    std::string spec = kDfsSpec;
    const std::string from = "depths = 2,3";
    spec.replace(spec.find(from), from.size(), "depths = 3,2");
    write_file(tmp.path("dfs.cfg"), spec);
    CliOptions opt = options_for(tmp, "dfs.cfg");
    CHECK_THROWS_WITH(cmd_depth_sweep(opt), "depth-sweep depths must ascend");
  }
}

TEST_CASE("a seed flag reshapes seed-sensitive traces deterministically") {
  TempDir tmp;
  write_file(tmp.path("dfs.cfg"), kDfsSpec);

  auto gen = [&](const std::string& out, std::uint64_t seed) {
    CliOptions opt = options_for(tmp, "dfs.cfg");
    opt.out_dir = tmp.path(out);
    opt.has_seed = true;
    opt.seed = seed;
    Capture capture(std::cout);
    REQUIRE(cmd_gen_trace(opt) == 0);
    return read_file(tmp.path(out + "/dfs_tiny.trace"));
  };
  const std::string a = gen("s7", 7);
  const std::string b = gen("s8", 8);
  const std::string c = gen("s7b", 7);
  CHECK(a != b);
  CHECK(a == c);
}

TEST_CASE("commands refuse to start without a spec path") {
  CliOptions opt;
  CHECK_THROWS_WITH(cmd_run(opt), "no spec file given (--spec)");
  CHECK_THROWS_WITH(cmd_sweep(opt), "no spec file given (--spec)");
  CHECK_THROWS_WITH(cmd_gen_trace(opt), "no spec file given (--spec)");
}
