// mabbob: generate, evaluate and benchmark many-affine BBOB problem suites.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mabbob/affine.hpp"
#include "mabbob/calibration.hpp"
#include "mabbob/format.hpp"
#include "mabbob/performance.hpp"
#include "mabbob/rng.hpp"
#include "mabbob/suite_io.hpp"

namespace {

using namespace mabbob;

// Thrown for invalid flag values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file_atomic(out_path, content);
  }
}

Algorithm algorithm_from(const std::string& name) {
  const auto algo = parse_algorithm(name);
  if (!algo) {
    throw UsageError("--algo: unknown algorithm '" + name +
                     "' (expected random_search|one_plus_one_es|basic_de or rs|es|de)");
  }
  return *algo;
}

ScaleTable scale_table_from(const std::string& source) {
  if (source == "paper") return ScaleTable::paper();
  if (source == "equal") return ScaleTable::equal();
  return parse_scale_table(read_text_file(source)).table;
}

struct GenerateArgs {
  std::size_t count = 1000;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  double threshold = kDefaultThreshold;
  std::int64_t instance_range = kDefaultInstanceRange;
  std::string scale_table = "paper";
  std::string out;
};

struct EvaluateArgs {
  std::string suite;
  std::size_t problem = 0;
  std::string points;
  std::string out;
};

struct CalibrateArgs {
  std::vector<std::size_t> dims = kDefaultCalibrationDims;
  std::size_t samples = kDefaultCalibrationSamples;
  std::uint64_t seed = 1;
  std::string aggregator = "mid_range";
  std::int64_t instance = 1;
  std::string out;
  std::string report;
};

struct RunArgs {
  std::string suite;
  std::string algo = "one_plus_one_es";
  std::size_t budget_multiplier = kDefaultBudgetMultiplier;
  std::size_t runs = kDefaultRuns;
  std::uint64_t seed = 1;
  std::string out;
  std::string trace_dir;
};

struct GridArgs {
  int f1 = 21;
  int f2 = 1;
  std::size_t alpha_steps = 21;
  std::size_t dim = 2;
  std::size_t runs = kDefaultRuns;
  std::size_t instances = 25;
  std::string algo = "one_plus_one_es";
  std::size_t budget_multiplier = kDefaultBudgetMultiplier;
  std::uint64_t seed = 1;
  std::string out;
};

void cmd_generate(const GenerateArgs& a) {
  if (a.count == 0) throw UsageError("--count: must be >= 1");
  if (a.dim == 0) throw UsageError("--dim: must be >= 1");
  if (!(a.threshold >= 0.0 && a.threshold < 1.0)) throw UsageError("--threshold: must be in [0, 1)");
  if (a.instance_range < 1) throw UsageError("--instance-range: must be >= 1");
  const auto table = scale_table_from(a.scale_table);
  const auto suite = generate_suite(a.count, a.dim, a.seed, a.threshold, a.instance_range, table);
  write_file_atomic(a.out, serialize_suite(suite));
}

void cmd_evaluate(const EvaluateArgs& a) {
  const auto suite = parse_suite(read_text_file(a.suite));
  if (a.problem >= suite.problems.size()) {
    throw UsageError("--problem: id " + std::to_string(a.problem) + " not in suite of " +
                     std::to_string(suite.problems.size()));
  }
  const auto problem = to_problem(suite.problems[a.problem], suite.dim);
  const auto points = parse_points(read_text_file(a.points), suite.dim);
  std::string out;
  for (const auto& p : points) {
    out += format_full(problem.evaluate(p));
    out += '\n';
  }
  emit(a.out, out);
}

void cmd_calibrate(const CalibrateArgs& a) {
  const auto agg = parse_aggregator(a.aggregator);
  if (!agg) {
    throw UsageError("--aggregator: expected min|mean|max|mid_range|equal, got '" + a.aggregator + "'");
  }
  if (a.samples == 0) throw UsageError("--samples: must be >= 1");
  if (a.dims.empty()) throw UsageError("--dims: at least one dimension required");
  CalibrationOptions opts;
  opts.dims = a.dims;
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.aggregator = *agg;
  opts.instance = a.instance;
  const auto result = calibrate(opts);

  ScaleTableFile file;
  file.table = result.table;
  file.aggregator = a.aggregator;
  file.dims = a.dims;
  file.samples = a.samples;
  file.seed = a.seed;
  write_file_atomic(a.out, serialize_scale_table(file));

  const auto report = comparison_report(result, ScaleTable::paper());
  if (a.report.empty()) {
    std::cout << report;
  } else {
    write_file_atomic(a.report, report);
  }
}

void cmd_run(const RunArgs& a) {
  const auto algo = algorithm_from(a.algo);
  if (a.runs == 0) throw UsageError("--runs: must be >= 1");
  if (a.budget_multiplier == 0) throw UsageError("--budget-multiplier: must be >= 1");
  const auto suite = parse_suite(read_text_file(a.suite));
  const auto rows = run_suite(suite, algo, a.budget_multiplier, a.runs, a.seed);
  std::ostringstream csv;
  write_run_csv(csv, rows);
  emit(a.out, csv.str());

  if (!a.trace_dir.empty()) {
    std::filesystem::create_directories(a.trace_dir);
    const Budget budget = Budget::for_dim(suite.dim, a.budget_multiplier);
    for (const auto& row : rows) {
      const auto problem = to_problem(suite.problems[row.problem_id], suite.dim);
      const auto trace = run_optimizer(
          algo, [&](std::span<const double> x) { return problem(x); }, suite.dim, budget, row.seed);
      std::ostringstream t;
      write_trace_csv(t, trace);
      const auto name = "problem_" + std::to_string(row.problem_id) + "_run_" + std::to_string(row.run) + ".csv";
      write_file_atomic(std::filesystem::path(a.trace_dir) / name, t.str());
    }
  }
}

void cmd_grid(const GridArgs& a) {
  if (a.alpha_steps < 2) throw UsageError("--alpha-steps: must be >= 2");
  if (a.dim == 0) throw UsageError("--dim: must be >= 1");
  if (a.runs == 0) throw UsageError("--runs: must be >= 1");
  if (a.instances == 0) throw UsageError("--instances: must be >= 1");
  if (a.budget_multiplier == 0) throw UsageError("--budget-multiplier: must be >= 1");
  SweepOptions opts;
  opts.f1 = FunctionId(a.f1).value();
  opts.f2 = FunctionId(a.f2).value();
  opts.alphas = evenly_spaced_alphas(a.alpha_steps);
  opts.dim = a.dim;
  opts.runs = a.runs;
  opts.instances = a.instances;
  opts.budget = Budget::for_dim(a.dim, a.budget_multiplier);
  opts.algorithm = algorithm_from(a.algo);
  opts.seed = a.seed;
  const auto cells = alpha_sweep(opts);
  std::ostringstream csv;
  write_sweep_csv(csv, cells);
  emit(a.out, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Many-affine BBOB problem generator and benchmarking harness", "mabbob"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Sample a suite of many-affine problems into a JSON file");
  g->add_option("--count", gen.count, "Number of problems")->capture_default_str();
  g->add_option("--dim", gen.dim, "Search-space dimension")->required();
  g->add_option("--seed", gen.seed, "Master seed")->required();
  g->add_option("--threshold", gen.threshold, "Weight threshold T")->capture_default_str();
  g->add_option("--instance-range", gen.instance_range, "Instance ids are drawn from [1, N]")
      ->capture_default_str();
  g->add_option("--scale-table", gen.scale_table, "'paper', 'equal' or a scale-table JSON file")
      ->capture_default_str();
  g->add_option("--out", gen.out, "Suite file to write")->required();

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Evaluate one suite problem on a CSV file of points");
  e->add_option("--suite", ev.suite, "Suite file")->required();
  e->add_option("--problem", ev.problem, "0-based problem id")->required();
  e->add_option("--points", ev.points, "Headerless CSV, one point per row")->required();
  e->add_option("--out", ev.out, "Output file (default: stdout)");

  CalibrateArgs cal;
  auto* c = app.add_subcommand("calibrate", "Recompute the per-function scale factors by sampling");
  c->add_option("--dims", cal.dims, "Comma-separated dimensions")->delimiter(',')->capture_default_str();
  c->add_option("--samples", cal.samples, "Uniform samples per function and dimension")
      ->capture_default_str();
  c->add_option("--seed", cal.seed, "Master seed")->capture_default_str();
  c->add_option("--aggregator", cal.aggregator, "min|mean|max|mid_range|equal")->capture_default_str();
  c->add_option("--instance", cal.instance, "Instance id used for sampling")->capture_default_str();
  c->add_option("--out", cal.out, "Scale-table file to write")->required();
  c->add_option("--report", cal.report, "Comparison report file (default: stdout)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run a baseline optimizer on every problem of a suite");
  r->add_option("--suite", run.suite, "Suite file")->required();
  r->add_option("--algo", run.algo, "random_search|one_plus_one_es|basic_de")->capture_default_str();
  r->add_option("--budget-multiplier", run.budget_multiplier, "Budget = multiplier * dim")
      ->capture_default_str();
  r->add_option("--runs", run.runs, "Independent runs per problem")->capture_default_str();
  r->add_option("--seed", run.seed, "Master seed for the runs")->capture_default_str();
  r->add_option("--out", run.out, "Results CSV (default: stdout)");
  r->add_option("--trace-dir", run.trace_dir, "Also write one trace CSV per run into this directory");

  GridArgs grid;
  auto* gr = app.add_subcommand("grid", "Sweep alpha over a pairwise combination and report mean AOCC");
  gr->add_option("--f1", grid.f1, "Function weighted by alpha")->capture_default_str();
  gr->add_option("--f2", grid.f2, "Function weighted by 1 - alpha")->capture_default_str();
  gr->add_option("--alpha-steps", grid.alpha_steps, "Evenly spaced alpha values in [0, 1]")
      ->capture_default_str();
  gr->add_option("--dim", grid.dim, "Search-space dimension")->capture_default_str();
  gr->add_option("--runs", grid.runs, "Runs per instance")->capture_default_str();
  gr->add_option("--instances", grid.instances, "Instances per alpha")->capture_default_str();
  gr->add_option("--algo", grid.algo, "random_search|one_plus_one_es|basic_de")->capture_default_str();
  gr->add_option("--budget-multiplier", grid.budget_multiplier, "Budget = multiplier * dim")
      ->capture_default_str();
  gr->add_option("--seed", grid.seed, "Master seed")->capture_default_str();
  gr->add_option("--out", grid.out, "Sweep CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    std::cerr << "error: usage: " << ex.what() << '\n';
    return 2;
  }

  try {
    if (g->parsed()) cmd_generate(gen);
    if (e->parsed()) cmd_evaluate(ev);
    if (c->parsed()) cmd_calibrate(cal);
    if (r->parsed()) cmd_run(run);
    if (gr->parsed()) cmd_grid(grid);
  } catch (const UsageError& ex) {
    std::cerr << "error: usage: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
