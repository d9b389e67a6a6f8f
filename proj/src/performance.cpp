#include "mabbob/performance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "mabbob/affine.hpp"
#include "mabbob/bbob.hpp"
#include "mabbob/format.hpp"
#include "mabbob/parallel.hpp"
#include "mabbob/rng.hpp"
#include "mabbob/simd/kernels.hpp"

namespace mabbob {
namespace {

// Counts evaluations and keeps the running minimum.
class Recorder {
 public:
  Recorder(const Objective& objective, Budget budget, std::uint64_t seed)
      : objective_(objective), budget_(budget.evaluations) {
    trace_.seed = seed;
    trace_.raw.reserve(budget_);
    trace_.best_so_far.reserve(budget_);
  }

  [[nodiscard]] bool exhausted() const noexcept { return trace_.raw.size() >= budget_; }

  double operator()(std::span<const double> x) {
    const double y = objective_(x);
    const double best = trace_.best_so_far.empty() ? y : std::min(trace_.best_so_far.back(), y);
    trace_.raw.push_back(y);
    trace_.best_so_far.push_back(best);
    return y;
  }

  RunTrace take() { return std::move(trace_); }

 private:
  const Objective& objective_;
  std::size_t budget_;
  RunTrace trace_;
};

void uniform_point(Rng& rng, std::span<double> x) {
  for (auto& v : x) {
    v = rng.uniform(kLowerBound, kUpperBound);
  }
}

void random_search(Recorder& eval, Rng& rng, std::size_t dim) {
  std::vector<double> x(dim);
  while (!eval.exhausted()) {
    uniform_point(rng, x);
    eval(x);
  }
}

constexpr double kEsInitialStep = 2.0;
constexpr double kEsFactor = 1.5;
constexpr int kEsWindow = 10;
constexpr double kEsTargetRate = 0.2;

void one_plus_one_es(Recorder& eval, Rng& rng, std::size_t dim) {
  const auto& k = simd::active();
  std::vector<double> parent(dim);
  std::vector<double> child(dim);
  std::vector<double> noise(dim);
  uniform_point(rng, parent);
  double parent_value = eval(parent);
  double step = kEsInitialStep;
  int successes = 0;
  int iteration = 0;
  while (!eval.exhausted()) {
    for (auto& v : noise) {
      v = rng.normal();
    }
    k.add_scaled(parent.data(), noise.data(), step, child.data(), dim);
    k.clamp(child.data(), dim, kLowerBound, kUpperBound);
    const double value = eval(child);
    if (value < parent_value) {
      ++successes;
    }
    if (value <= parent_value) {
      parent.swap(child);
      parent_value = value;
    }
    if (++iteration % kEsWindow == 0) {
      const double rate = static_cast<double>(successes) / kEsWindow;
      if (rate > kEsTargetRate) {
        step *= kEsFactor;
      } else if (rate < kEsTargetRate) {
        step /= kEsFactor;
      }
      successes = 0;
    }
  }
}

constexpr double kDeWeight = 0.5;
constexpr double kDeCrossover = 0.9;
constexpr std::size_t kDePopulationPerDim = 10;

void basic_de(Recorder& eval, Rng& rng, std::size_t dim) {
  const auto& k = simd::active();
  const std::size_t np = std::max<std::size_t>(kDePopulationPerDim * dim, 4);
  std::vector<double> pop(np * dim);
  std::vector<double> fitness(np);
  std::size_t filled = 0;
  for (; filled < np && !eval.exhausted(); ++filled) {
    std::span<double> x(pop.data() + filled * dim, dim);
    uniform_point(rng, x);
    fitness[filled] = eval(x);
  }
  if (filled < np) {
    return;
  }

  std::vector<double> trials(np * dim);
  std::vector<double> trial_fitness(np);
  std::vector<double> mutant(dim);
  const auto pick = [&](std::size_t avoid_a, std::size_t avoid_b, std::size_t avoid_c) {
    for (;;) {
      const auto r = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(np) - 1));
      if (r != avoid_a && r != avoid_b && r != avoid_c) {
        return r;
      }
    }
  };

  while (!eval.exhausted()) {
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < np && !eval.exhausted(); ++i) {
      const std::size_t r1 = pick(i, i, i);
      const std::size_t r2 = pick(i, r1, r1);
      const std::size_t r3 = pick(i, r1, r2);
      k.difference_step(&pop[r1 * dim], &pop[r2 * dim], &pop[r3 * dim], kDeWeight, mutant.data(),
                        dim);
      const auto forced = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(dim) - 1));
      std::span<double> trial(trials.data() + i * dim, dim);
      for (std::size_t j = 0; j < dim; ++j) {
        const bool take = rng.uniform() < kDeCrossover || j == forced;
        trial[j] = take ? mutant[j] : pop[i * dim + j];
      }
      k.clamp(trial.data(), dim, kLowerBound, kUpperBound);
      trial_fitness[i] = eval(trial);
      ++evaluated;
    }
    for (std::size_t i = 0; i < evaluated; ++i) {
      if (trial_fitness[i] <= fitness[i]) {
        std::copy_n(trials.begin() + static_cast<std::ptrdiff_t>(i * dim), dim,
                    pop.begin() + static_cast<std::ptrdiff_t>(i * dim));
        fitness[i] = trial_fitness[i];
      }
    }
  }
}

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
      ++j;
    }
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) {
      r[order[t]] = avg;
    }
    i = j + 1;
  }
  return r;
}

}  // namespace

double aocc(std::span<const double> best_so_far) {
  if (best_so_far.empty()) {
    throw std::invalid_argument("trace: must not be empty");
  }
  double sum = 0.0;
  for (const double y : best_so_far) {
    if (!(y > 0.0)) {
      throw std::invalid_argument("trace: values must be positive");
    }
    const double log_y = std::clamp(std::log10(y), -8.0, 2.0);
    sum += 1.0 - (log_y + 8.0) / 10.0;
  }
  return sum / static_cast<double>(best_so_far.size());
}

double mean_aocc(std::span<const RunTrace> traces) {
  if (traces.empty()) {
    throw std::invalid_argument("traces: must not be empty");
  }
  const std::size_t budget = traces.front().best_so_far.size();
  double sum = 0.0;
  for (const auto& t : traces) {
    if (t.best_so_far.size() != budget) {
      throw std::invalid_argument("traces: budgets differ");
    }
    sum += aocc(t);
  }
  return sum / static_cast<double>(traces.size());
}

std::string_view algorithm_name(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::random_search:
      return "random_search";
    case Algorithm::one_plus_one_es:
      return "one_plus_one_es";
    case Algorithm::basic_de:
      return "basic_de";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  if (name == "random_search" || name == "rs") return Algorithm::random_search;
  if (name == "one_plus_one_es" || name == "es") return Algorithm::one_plus_one_es;
  if (name == "basic_de" || name == "de") return Algorithm::basic_de;
  return std::nullopt;
}

RunTrace run_optimizer(Algorithm algo, const Objective& objective, std::size_t dim, Budget budget,
                       std::uint64_t seed) {
  if (budget.evaluations == 0) {
    throw std::invalid_argument("budget: must be >= 1");
  }
  if (dim == 0) {
    throw std::invalid_argument("dim: must be >= 1, got 0");
  }
  Recorder eval(objective, budget, seed);
  Rng rng(seed);
  switch (algo) {
    case Algorithm::random_search:
      random_search(eval, rng, dim);
      break;
    case Algorithm::one_plus_one_es:
      one_plus_one_es(eval, rng, dim);
      break;
    case Algorithm::basic_de:
      basic_de(eval, rng, dim);
      break;
    default:
      throw std::invalid_argument("algo: unknown algorithm");
  }
  return eval.take();
}

std::vector<double> sweep_location(std::uint64_t seed, std::int64_t instance, std::size_t dim) {
  Rng rng(derive_seed({seed, 0x10CA7E, static_cast<std::uint64_t>(instance)}));
  std::vector<double> x(dim);
  uniform_point(rng, x);
  return x;
}

std::uint64_t sweep_run_seed(std::uint64_t seed, std::int64_t instance, std::size_t run) {
  return derive_seed({seed, 0x5EED, static_cast<std::uint64_t>(instance), run});
}

std::vector<double> evenly_spaced_alphas(std::size_t steps) {
  if (steps < 2) {
    throw std::invalid_argument("alpha_steps: must be >= 2");
  }
  std::vector<double> alphas(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    alphas[i] = static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return alphas;
}

std::vector<SweepCell> alpha_sweep(const SweepOptions& options) {
  if (options.alphas.empty()) {
    throw std::invalid_argument("alphas: must not be empty");
  }
  for (const double a : options.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("alphas: values must lie in [0, 1]");
    }
  }
  if (options.runs == 0 || options.instances == 0) {
    throw std::invalid_argument("runs/instances: must be >= 1");
  }
  const FunctionId f1(options.f1);
  const FunctionId f2(options.f2);
  const Budget budget = options.budget.value_or(Budget::for_dim(options.dim));
  const std::size_t n_inst = options.instances;

  std::vector<SweepCell> cells(options.alphas.size() * n_inst);
  parallel_for(cells.size(), [&](std::size_t job) {
    const double alpha = options.alphas[job / n_inst];
    const auto instance = static_cast<std::int64_t>(job % n_inst) + 1;
    const PairwiseProblem problem(f1, InstanceId(instance), f2, InstanceId(1), alpha, options.dim,
                                  sweep_location(options.seed, instance, options.dim));
    const Objective objective = [&](std::span<const double> x) { return problem(x); };
    double sum = 0.0;
    for (std::size_t r = 0; r < options.runs; ++r) {
      const auto trace = run_optimizer(options.algorithm, objective, options.dim, budget,
                                       sweep_run_seed(options.seed, instance, r));
      sum += aocc(trace);
    }
    cells[job] = {alpha, instance, sum / static_cast<double>(options.runs)};
  });
  return cells;
}

std::vector<std::pair<double, double>> mean_by_alpha(std::span<const SweepCell> cells) {
  std::vector<std::pair<double, double>> out;
  std::vector<std::size_t> counts;
  for (const auto& c : cells) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == c.alpha; });
    if (it == out.end()) {
      out.emplace_back(c.alpha, 0.0);
      counts.push_back(0);
      it = out.end() - 1;
    }
    it->second += c.mean_aocc;
    ++counts[static_cast<std::size_t>(it - out.begin())];
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].second /= static_cast<double>(counts[i]);
  }
  return out;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("spearman: need two equal-length samples of size >= 2");
  }
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0;
  double va = 0.0;
  double vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) {
    return 0.0;
  }
  return cov / std::sqrt(va * vb);
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "evaluation,raw_y,best_so_far\n";
  for (std::size_t i = 0; i < trace.raw.size(); ++i) {
    out << (i + 1) << ',' << format_shortest(trace.raw[i]) << ','
        << format_shortest(trace.best_so_far[i]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepCell> cells) {
  out << "alpha,instance,mean_aocc\n";
  for (const auto& c : cells) {
    out << format_shortest(c.alpha) << ',' << c.instance << ',' << format_shortest(c.mean_aocc)
        << '\n';
  }
}

}  // namespace mabbob
