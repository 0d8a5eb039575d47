#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "esim/harness.hpp"
#include "esim/spec_file.hpp"
#include "esim/types.hpp"

namespace {

void add_common(CLI::App* cmd, esim::CliOptions& opt, bool spec_required) {
  auto* spec = cmd->add_option("--spec", opt.spec_path, "experiment spec file");
  if (spec_required) spec->required();
  cmd->add_option("--out", opt.out_dir, "output directory (default .)");
  cmd->add_option("--seed", opt.seed, "override the workload seed")
      ->each([&opt](const std::string&) { opt.has_seed = true; });
  cmd->add_flag("--strict", opt.strict, "audit after every event and keep the event log");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale simulator of elastic scaling primitives"};
  app.require_subcommand(1);

  esim::CliOptions opt;
  std::string thresholds_raw;
  std::string events_path;
  std::string metrics_path;

  CLI::App* c_run = app.add_subcommand("run", "one elastic run under the spec's policy");
  add_common(c_run, opt, true);
  CLI::App* c_base = app.add_subcommand("baseline", "the same run with jumping disabled");
  add_common(c_base, opt, true);
  CLI::App* c_sweep = app.add_subcommand("sweep", "one run per threshold plus the baseline");
  add_common(c_sweep, opt, true);
  c_sweep->add_option("--thresholds", thresholds_raw,
                      "comma list overriding the spec (K/M/G binary suffixes)");
  CLI::App* c_depth =
      app.add_subcommand("depth-sweep", "dfs runs across tree depths at a fixed threshold");
  add_common(c_depth, opt, true);
  CLI::App* c_report =
      app.add_subcommand("report", "summarize every .sweep.csv in the output directory");
  c_report->add_option("--out", opt.out_dir, "directory to read (default .)");
  CLI::App* c_gen = app.add_subcommand("gen-trace", "write the spec's workload trace to disk");
  add_common(c_gen, opt, true);
  CLI::App* c_verify =
      app.add_subcommand("verify", "replay an events log against a metrics csv");
  c_verify->add_option("events", events_path, "events.log path")->required();
  c_verify->add_option("metrics", metrics_path, "metrics.csv path")->required();
  c_verify->add_option("--spec", opt.spec_path, "spec file for the cost model");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_run->parsed()) return esim::cmd_run(opt);
    if (c_base->parsed()) return esim::cmd_baseline(opt);
    if (c_sweep->parsed()) {
      if (!thresholds_raw.empty()) {
        opt.thresholds = esim::parse_threshold_list(thresholds_raw, "--thresholds");
      }
      return esim::cmd_sweep(opt);
    }
    if (c_depth->parsed()) return esim::cmd_depth_sweep(opt);
    if (c_report->parsed()) return esim::cmd_report(opt);
    if (c_gen->parsed()) return esim::cmd_gen_trace(opt);
    if (c_verify->parsed()) return esim::cmd_verify(opt, events_path, metrics_path);
  } catch (const esim::AuditError& e) {
    std::cerr << "audit failure: " << e.what() << "\n";
    return 3;
  } catch (const esim::SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
