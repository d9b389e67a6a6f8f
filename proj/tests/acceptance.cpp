// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: mabbob_acceptance [criterion numbers...]   (default: all)

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mabbob/affine.hpp"
#include "mabbob/calibration.hpp"
#include "mabbob/performance.hpp"
#include "mabbob/suite_io.hpp"

using namespace mabbob;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<double> uniform_point(Rng& rng, std::size_t dim) {
  std::vector<double> x(dim);
  for (auto& v : x) v = rng.uniform(kLowerBound, kUpperBound);
  return x;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// 1. Scale-factor table reproduction.
Outcome table_reproduction() {
  CalibrationOptions opt;
  opt.dims = {2, 3, 5, 10, 20};
  opt.samples = 50000;
  opt.aggregator = Aggregator::mid_range;
  const auto result = calibrate(opt);
  const auto dev = compare_tables(result.table, ScaleTable::paper(), 0.15);
  std::size_t within = 0;
  std::ostringstream flagged;
  for (const auto& d : dev) {
    if (d.flagged) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " F%d %.1f vs %.1f (%+.1f%%)", d.fid.value(), d.computed,
                    d.reference, 100.0 * d.relative);
      flagged << buf;
    } else {
      ++within;
    }
  }
  std::ostringstream detail;
  detail << within << "/24 within 15%";
  if (within < 24) detail << "; deviating:" << flagged.str();
  return {within >= 20, detail.str()};
}

// 2. Optimum value and global-minimum invariant.
Outcome optimum_invariant() {
  std::size_t problems = 0, bad_opt = 0, below = 0;
  for (const std::size_t dim : {2u, 5u}) {
    const auto suite = generate_suite(100, dim, 20240 + dim, kDefaultThreshold,
                                      kDefaultInstanceRange, ScaleTable::paper());
    for (const auto& rec : suite.problems) {
      const auto p = to_problem(rec, dim);
      ++problems;
      if (p.evaluate(rec.x_opt) != 1e-8) ++bad_opt;
      Rng rng(derive_seed({dim, rec.problem_id, 0xACCE}));
      for (int i = 0; i < 10000; ++i) {
        if (p(uniform_point(rng, dim)) < 1e-8) ++below;
      }
    }
  }
  std::ostringstream d;
  d << problems << " problems; f(x_opt) != 1e-8: " << bad_opt << "; samples below 1e-8: " << below;
  return {bad_opt == 0 && below == 0, d.str()};
}

// 3. Weight sampler statistics.
Outcome weight_statistics() {
  Rng rng(3);
  double total = 0.0, worst_sum = 0.0;
  std::size_t min_count = 24;
  for (int i = 0; i < 10000; ++i) {
    const auto w = sample_weights(rng, 0.85);
    const auto k = w.positive_count();
    total += static_cast<double>(k);
    min_count = std::min(min_count, k);
    double s = 0.0;
    for (const double v : w.values()) s += v;
    worst_sum = std::max(worst_sum, std::abs(s - 1.0));
  }
  const double mean = total / 10000.0;
  std::ostringstream d;
  d << "mean positive count " << mean << ", min " << min_count << ", max |sum-1| " << worst_sum;
  return {mean >= 3.2 && mean <= 4.0 && min_count >= 2 && worst_sum <= 1e-12, d.str()};
}

// 4. AOCC unit values and monotonicity.
Outcome aocc_units() {
  const bool floor_ok = aocc(std::vector<double>(50, 1e-8)) == 1.0;
  const bool ceil_ok = aocc(std::vector<double>{1e2, 5e2, 1e9}) == 0.0;
  const bool mid_ok = aocc(std::vector<double>{1e-3}) == 0.5;
  Rng rng(4);
  std::size_t violations = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 100));
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::pow(10.0, rng.uniform(-10.0, 4.0));
      hi[i] = lo[i] * std::pow(10.0, rng.uniform(0.0, 2.0));
    }
    if (aocc(lo) < aocc(hi)) ++violations;
  }
  std::ostringstream d;
  d << "floor " << (floor_ok ? "ok" : "WRONG") << ", ceiling " << (ceil_ok ? "ok" : "WRONG")
    << ", 1e-3 " << (mid_ok ? "ok" : "WRONG") << "; monotonicity violations " << violations
    << "/1000";
  return {floor_ok && ceil_ok && mid_ok && violations == 0, d.str()};
}

// 5. Pairwise endpoints recover the clamped single components.
Outcome boundary_recovery() {
  Rng rng(5);
  std::size_t mismatches = 0;
  std::ostringstream pairs;
  for (int k = 0; k < 10; ++k) {
    const int f1 = static_cast<int>(rng.uniform_int(1, 24));
    const int f2 = static_cast<int>(rng.uniform_int(1, 24));
    const auto i1 = rng.uniform_int(1, 100);
    const auto i2 = rng.uniform_int(1, 100);
    const std::size_t dim = static_cast<std::size_t>(rng.uniform_int(2, 10));
    pairs << (k ? "," : " ") << "(F" << f1 << ",F" << f2 << ")";
    const auto a1 = combine_pairwise(f1, i1, f2, i2, 1.0, dim);
    const auto a0 = combine_pairwise(f1, i1, f2, i2, 0.0, dim);
    const auto c1 = create_component(f1, i1, dim);
    const auto c2 = create_component(f2, i2, dim);
    const auto o1 = c1.optimum_location();
    const auto o2 = c2.optimum_location();
    for (int i = 0; i < 1000; ++i) {
      const auto x = uniform_point(rng, dim);
      std::vector<double> x2(dim);
      for (std::size_t j = 0; j < dim; ++j) x2[j] = (x[j] - o1[j]) + o2[j];
      if (!same_bits(a1.evaluate(x), std::max(c1.evaluate_raw(x), 1e-8))) ++mismatches;
      if (!same_bits(a0.evaluate(x), std::max(c2.evaluate_raw(x2), 1e-8))) ++mismatches;
    }
  }
  std::ostringstream d;
  d << "mismatches " << mismatches << "/20000 over" << pairs.str();
  return {mismatches == 0, d.str()};
}

// 6. Permutation invariance of the many-affine sum.
Outcome permutation_invariance() {
  Rng rng(6);
  std::size_t mismatches = 0;
  for (int k = 0; k < 50; ++k) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(2, 10));
    const auto s = sample_instance(rng, dim);
    std::vector<AffineTerm> terms;
    for (int f = 1; f <= kNumFunctions; ++f) {
      const FunctionId fid(f);
      terms.push_back({fid, InstanceId(s.instances[fid.index()]), s.weights[fid],
                       ScaleTable::paper()[fid]});
    }
    const ManyAffineProblem base(terms, s.x_opt);
    rng.shuffle(std::span<AffineTerm>(terms));
    const ManyAffineProblem shuffled(terms, s.x_opt);
    for (int i = 0; i < 1000; ++i) {
      const auto x = uniform_point(rng, dim);
      if (!same_bits(base.evaluate(x), shuffled.evaluate(x))) ++mismatches;
    }
  }
  std::ostringstream d;
  d << "mismatches " << mismatches << "/50000";
  return {mismatches == 0, d.str()};
}

// 7. Easy-to-hard transition along the (F21, F1) family.
Outcome transition() {
  SweepOptions opt;
  opt.f1 = 21;
  opt.f2 = 1;
  opt.alphas = evenly_spaced_alphas(21);
  opt.dim = 2;
  opt.runs = 50;
  opt.instances = 25;
  opt.algorithm = Algorithm::one_plus_one_es;
  opt.seed = 7;
  const auto cells = alpha_sweep(opt);
  const auto means = mean_by_alpha(cells);
  std::vector<double> a, m;
  for (const auto& [alpha, mean] : means) {
    a.push_back(alpha);
    m.push_back(mean);
  }
  const double rho = spearman(a, m);
  const double sphere = m.front();
  const double gallagher = m.back();
  std::ostringstream d;
  d << "spearman " << rho << ", mean AOCC alpha=0 " << sphere << ", alpha=1 " << gallagher;
  return {rho <= -0.8 && sphere > gallagher, d.str()};
}

// 8. End-to-end determinism through the command-line tool.
int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MABBOB_CLI_PATH + "\" " + args;
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome end_to_end() {
  const auto dir = fs::temp_directory_path() / ("mabbob_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto p = [&](const char* name) { return (dir / name).string(); };
  int status = 0;
  for (const char* tag : {"1", "2"}) {
    const std::string suite = p((std::string("suite") + tag + ".json").c_str());
    const std::string csv = p((std::string("runs") + tag + ".csv").c_str());
    status |= run_cli("generate --count 20 --dim 2 --seed 2024 --out \"" + suite + "\"");
    status |= run_cli("run --suite \"" + suite + "\" --algo one_plus_one_es --runs 10 --seed 99 --out \"" +
                      csv + "\"");
  }
  const auto s1 = slurp(p("suite1.json"));
  const auto r1 = slurp(p("runs1.csv"));
  const bool suites_equal = !s1.empty() && s1 == slurp(p("suite2.json"));
  const bool runs_equal = !r1.empty() && r1 == slurp(p("runs2.csv"));
  fs::remove_all(dir);
  std::ostringstream d;
  d << "exit codes " << (status == 0 ? "ok" : "NONZERO") << ", suite files "
    << (suites_equal ? "identical" : "DIFFER") << " (" << s1.size() << " bytes), result CSVs "
    << (runs_equal ? "identical" : "DIFFER") << " (" << r1.size() << " bytes)";
  return {status == 0 && suites_equal && runs_equal, d.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "scale-factor table within 15% for >= 20/24 functions", table_reproduction},
      {2, "optimum value 1e-8 and global minimum (dims 2, 5)", optimum_invariant},
      {3, "weight sampler statistics at T = 0.85", weight_statistics},
      {4, "AOCC unit values and monotonicity", aocc_units},
      {5, "pairwise boundary recovery at alpha in {0, 1}", boundary_recovery},
      {6, "many-affine permutation invariance", permutation_invariance},
      {7, "easy-to-hard transition on (F21, F1)", transition},
      {8, "end-to-end generate + run determinism", end_to_end},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && selected.count(c.id) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %d. %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
