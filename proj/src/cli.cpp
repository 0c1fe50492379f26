#include "crier/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "crier/bench.hpp"
#include "crier/detector.hpp"
#include "crier/error.hpp"
#include "crier/evaluate.hpp"
#include "crier/loggen.hpp"

namespace crier {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string default_diagnostics_path(const std::string& report_path) {
  std::filesystem::path p(report_path);
  p.replace_extension(".diagnostics.csv");
  return p.string();
}

void print_error(std::ostream& err, const char* kind, const std::string& what) {
  err << nlohmann::json{{"error", kind}, {"message", what}}.dump() << '\n';
}

struct DetectOptions {
  std::string log;
  std::size_t min_window = 50;
  double significance = 0.05;
  bool fixed_window = false;
  std::string resume = "anchored";
  std::string out;
  std::string diagnostics;
};

struct GenerateOptions {
  std::string base;
  std::string derived;
  std::string pattern;
  std::string dist;
  std::size_t drifts = 9;
  std::uint64_t seed = 0;
  std::string out_log = "log.csv";
  std::string out_truth = "truth.json";
  std::string out_derived;
};

struct EvaluateOptions {
  std::string report;
  std::string truth;
  std::string out;
};

struct BenchOptions {
  std::uint64_t seed = 0;
  std::string out;
  std::size_t min_window = 50;
  std::size_t drifts = 9;
  std::size_t jobs = 0;
};

void run_detect(const DetectOptions& o, std::ostream& out) {
  DetectorConfig config;
  config.min_window = o.min_window;
  config.significance = o.significance;
  config.window_growth =
      o.fixed_window ? WindowGrowth::fixed : WindowGrowth::doubling;
  config.resume = o.resume == "jump"         ? ResumePolicy::jump_ahead
                  : o.resume == "confirming" ? ResumePolicy::confirming_window
                                             : ResumePolicy::drift_anchored;
  const EventLog log = read_log_file(o.log);
  const DriftReport report = detect(log, config);

  const std::string diag =
      o.diagnostics.empty() ? default_diagnostics_path(o.out) : o.diagnostics;
  {
    auto csv = open_output(diag);
    write_diagnostics_csv(report, csv);
  }
  write_json(o.out, report_to_json(report, diag));
  out << "sudden=" << report.sudden.size()
      << " gradual=" << report.gradual.size() << '\n';
}

void run_generate(const GenerateOptions& o, std::ostream& out) {
  const ProcessTree base = read_tree_file(o.base);
  const auto dist = DriftDistribution::parse(o.dist);
  ProcessTree derived =
      o.derived.empty()
          ? benchmark_model(base, parse_pattern(o.pattern), o.seed)
          : read_tree_file(o.derived);
  const auto generated = generate_log(base, derived, dist, o.drifts, o.seed);
  {
    auto csv = open_output(o.out_log);
    write_csv(generated.log, csv);
  }
  write_json(o.out_truth, to_json(generated.truth));
  if (!o.out_derived.empty()) write_json(o.out_derived, to_json(derived));
  out << "traces=" << generated.log.size()
      << " regions=" << generated.truth.regions.size() << '\n';
}

void run_evaluate(const EvaluateOptions& o, std::ostream& out) {
  const DriftReport report = report_from_json(read_json(o.report));
  const GroundTruth truth = truth_from_json(read_json(o.truth));
  const auto json = to_json(evaluate(report, truth));
  if (o.out.empty())
    out << json.dump(2) << '\n';
  else
    write_json(o.out, json);
}

void run_bench(const BenchOptions& o, std::ostream& out) {
  BenchConfig config;
  config.seed = o.seed;
  config.drifts = o.drifts;
  config.jobs = o.jobs;
  config.detector.min_window = o.min_window;
  const auto rows = run_benchmark(config);
  std::ostringstream csv;
  write_aggregate_csv(rows, csv);
  auto file = open_output(o.out);
  file << csv.str();
  if (!file) throw IoError("failed writing '" + o.out + "'");
  out << "rows=" << rows.size() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Conformance-based concept drift detection for event logs",
               "crier"};
  app.require_subcommand(1);

  DetectOptions det;
  auto* detect_cmd = app.add_subcommand("detect", "Detect drifts in a log");
  detect_cmd->add_option("--log", det.log, "Event log (.csv or .xes)")
      ->required();
  detect_cmd->add_option("--min-window", det.min_window, "Minimum window size")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  detect_cmd
      ->add_option("--significance", det.significance,
                   "Significance level of the slope test")
      ->capture_default_str();
  detect_cmd->add_flag("--fixed-window", det.fixed_window,
                       "Keep the window at the minimum size");
  detect_cmd->add_option("--resume", det.resume, "Resume policy after a drift")
      ->check(CLI::IsMember({"anchored", "confirming", "jump"}))
      ->capture_default_str();
  detect_cmd->add_option("--out", det.out, "Report JSON path")->required();
  detect_cmd->add_option("--diagnostics", det.diagnostics,
                         "Diagnostics CSV path");

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic log");
  gen_cmd->add_option("--base", gen.base, "Base tree JSON or 'loanlike'")
      ->required();
  auto* derived_opt =
      gen_cmd->add_option("--derived", gen.derived, "Derived tree JSON");
  auto* pattern_opt = gen_cmd->add_option("--pattern", gen.pattern,
                                          "Change pattern deriving the model");
  derived_opt->excludes(pattern_opt);
  gen_cmd->add_option("--dist", gen.dist, "Change distribution")->required();
  gen_cmd->add_option("--drifts", gen.drifts, "Number of drifts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out-log", gen.out_log, "Log CSV path")
      ->capture_default_str();
  gen_cmd->add_option("--out-truth", gen.out_truth, "Ground-truth JSON path")
      ->capture_default_str();
  gen_cmd->add_option("--out-derived", gen.out_derived,
                      "Write the derived tree JSON here");

  EvaluateOptions ev;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a report");
  eval_cmd->add_option("--report", ev.report, "Report JSON")->required();
  eval_cmd->add_option("--truth", ev.truth, "Ground-truth JSON")->required();
  eval_cmd->add_option("--out", ev.out, "Result JSON path (default stdout)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark grid");
  bench_cmd->add_option("--seed", bench.seed, "Random seed")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Aggregate CSV path")->required();
  bench_cmd->add_option("--min-window", bench.min_window, "Minimum window size")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  bench_cmd->add_option("--drifts", bench.drifts, "Drifts per log")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (*gen_cmd && gen.derived.empty() && gen.pattern.empty())
      throw CLI::ValidationError("generate needs --derived or --pattern");
  } catch (const CLI::CallForHelp&) {
    out << app.help(app.get_subcommands().empty()
                        ? ""
                        : app.get_subcommands().front()->get_name());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (*detect_cmd) run_detect(det, out);
    if (*gen_cmd) run_generate(gen, out);
    if (*eval_cmd) run_evaluate(ev, out);
    if (*bench_cmd) run_bench(bench, out);
  } catch (const Error& e) {
    print_error(err, "data", e.what());
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    print_error(err, "data", e.what());
    return kExitData;
  }
  return kExitOk;
}

}  // namespace crier
