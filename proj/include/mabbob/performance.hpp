#pragma once
// Anytime performance (AOCC) and the baseline optimizer portfolio.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mabbob {

inline constexpr std::size_t kDefaultBudgetMultiplier = 2000;
inline constexpr std::size_t kDefaultRuns = 50;

struct Budget {
  std::size_t evaluations;

  static Budget for_dim(std::size_t dim, std::size_t multiplier = kDefaultBudgetMultiplier) {
    return {multiplier * dim};
  }
};

struct RunTrace {
  std::vector<double> raw;           // objective value of each evaluation, in order
  std::vector<double> best_so_far;   // running minimum of raw
  std::uint64_t seed = 0;
};

// Mean over the trace of 1 - (clamp(log10 y, -8, 2) + 8) / 10.
// Throws std::invalid_argument for an empty trace or a non-positive value.
double aocc(std::span<const double> best_so_far);
inline double aocc(const RunTrace& trace) { return aocc(trace.best_so_far); }

// Throws std::invalid_argument for an empty set or traces of different length.
double mean_aocc(std::span<const RunTrace> traces);

enum class Algorithm { random_search, one_plus_one_es, basic_de };

std::string_view algorithm_name(Algorithm algo) noexcept;
// Accepts the full names and the short forms "rs", "es", "de".
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

using Objective = std::function<double(std::span<const double>)>;

// Spends exactly budget.evaluations calls of `objective`, every one at a
// point inside [-5, 5]^dim.
//   random_search    uniform sampling of the box
//   one_plus_one_es  isotropic Gaussian mutation, initial step 2.0, step
//                    multiplied/divided by 1.5 every 10 iterations when the
//                    success rate is above/below 1/5
//   basic_de         DE/rand/1/bin, population 10*dim, F = 0.5, CR = 0.9
// Points leaving the box are clamped onto it before evaluation.
// Throws std::invalid_argument for a zero budget or dim.
RunTrace run_optimizer(Algorithm algo, const Objective& objective, std::size_t dim, Budget budget,
                       std::uint64_t seed);

struct SweepOptions {
  int f1 = 21;
  int f2 = 1;
  std::vector<double> alphas;
  std::size_t dim = 2;
  std::size_t runs = kDefaultRuns;
  std::size_t instances = 25;
  std::optional<Budget> budget;  // default: 2000 * dim
  Algorithm algorithm = Algorithm::one_plus_one_es;
  std::uint64_t seed = 1;
};

struct SweepCell {
  double alpha;
  std::int64_t instance;
  double mean_aocc;
};

// Instance k (1-based) combines F_{f1, k} with F_{f2, 1}, translated so the
// optimum sits at sweep_location(seed, k, dim). Run r on instance k uses
// sweep_run_seed(seed, k, r) for every alpha, so cells that share an
// instance see the same random numbers. Output is ordered by alpha, then instance.
std::vector<SweepCell> alpha_sweep(const SweepOptions& options);

std::vector<double> sweep_location(std::uint64_t seed, std::int64_t instance, std::size_t dim);
std::uint64_t sweep_run_seed(std::uint64_t seed, std::int64_t instance, std::size_t run);

// steps >= 2 evenly spaced values from 0 to 1 inclusive.
std::vector<double> evenly_spaced_alphas(std::size_t steps);

// Mean AOCC per alpha, averaged over instances, in order of first appearance.
std::vector<std::pair<double, double>> mean_by_alpha(std::span<const SweepCell> cells);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> a, std::span<const double> b);

void write_trace_csv(std::ostream& out, const RunTrace& trace);
void write_sweep_csv(std::ostream& out, std::span<const SweepCell> cells);

}  // namespace mabbob
