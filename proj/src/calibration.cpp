#include "mabbob/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mabbob/parallel.hpp"

namespace mabbob {

std::string_view provenance_name(ScaleProvenance p) noexcept {
  switch (p) {
    case ScaleProvenance::paper_table_1:
      return "paper_table_1";
    case ScaleProvenance::recalibrated:
      return "recalibrated";
  }
  return "unknown";
}

ScaleTable::ScaleTable(const Values& values, ScaleProvenance provenance)
    : values_(values), provenance_(provenance) {}

ScaleTable ScaleTable::paper() { return {kPaperScaleFactors, ScaleProvenance::paper_table_1}; }

ScaleTable ScaleTable::equal() {
  Values v{};
  v.fill(10.0);
  return {v, ScaleProvenance::recalibrated};
}

ScaleTable ScaleTable::recalibrated(const Values& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("scale_factors: entry " + std::to_string(i + 1) +
                                  " must be positive and finite");
    }
  }
  return {values, ScaleProvenance::recalibrated};
}

std::string_view aggregator_name(Aggregator agg) noexcept {
  switch (agg) {
    case Aggregator::min:
      return "min";
    case Aggregator::mean:
      return "mean";
    case Aggregator::max:
      return "max";
    case Aggregator::mid_range:
      return "mid_range";
    case Aggregator::equal:
      return "equal";
  }
  return "unknown";
}

std::optional<Aggregator> parse_aggregator(std::string_view name) noexcept {
  for (const auto agg : {Aggregator::min, Aggregator::mean, Aggregator::max,
                         Aggregator::mid_range, Aggregator::equal}) {
    if (name == aggregator_name(agg)) {
      return agg;
    }
  }
  return std::nullopt;
}

double aggregate_log_precision(std::span<const double> precisions, Aggregator agg) {
  if (precisions.empty()) {
    throw std::invalid_argument("samples: at least one sample required");
  }
  const auto [lo, hi] = std::minmax_element(precisions.begin(), precisions.end());
  double value = 0.0;
  switch (agg) {
    case Aggregator::min:
      value = *lo;
      break;
    case Aggregator::max:
      value = *hi;
      break;
    case Aggregator::mid_range:
      value = 0.5 * *hi + 0.5 * *lo;
      break;
    case Aggregator::mean: {
      double sum = 0.0;
      for (const double p : precisions) {
        sum += p;
      }
      value = sum / static_cast<double>(precisions.size());
      break;
    }
    case Aggregator::equal:
      throw std::invalid_argument("aggregator: 'equal' defines a whole table, not a factor");
  }
  return std::max(std::log10(std::max(value, 1e-300)), -8.0) + 8.0;
}

double compute_scale_factor(const PrecisionFn& precision, std::size_t dim, std::size_t n_samples,
                            Rng& rng, Aggregator agg) {
  if (agg == Aggregator::equal) {
    throw std::invalid_argument("aggregator: 'equal' defines a whole table, not a factor");
  }
  if (n_samples == 0) {
    throw std::invalid_argument("samples: must be >= 1");
  }
  if (dim == 0) {
    throw std::invalid_argument("dim: must be >= 1, got 0");
  }
  std::vector<double> x(dim);
  std::vector<double> values(n_samples);
  for (auto& v : values) {
    for (auto& xi : x) {
      xi = rng.uniform(kLowerBound, kUpperBound);
    }
    v = precision(x);
  }
  return aggregate_log_precision(values, agg);
}

double compute_scale_factor(FunctionId fid, InstanceId iid, std::size_t dim,
                            std::size_t n_samples, Rng& rng, Aggregator agg) {
  const ComponentProblem problem(fid, iid, dim);
  return compute_scale_factor([&](std::span<const double> x) { return problem.precision(x); },
                              dim, n_samples, rng, agg);
}

double round_to_tenth(double v) noexcept { return std::floor(v * 10.0 + 0.5) / 10.0; }

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median: empty input");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

CalibrationResult calibrate(const CalibrationOptions& options) {
  if (options.aggregator == Aggregator::equal) {
    return {ScaleTable::equal(), {}};
  }
  if (options.dims.empty()) {
    throw std::invalid_argument("dims: at least one dimension required");
  }
  for (const auto d : options.dims) {
    if (d == 0) {
      throw std::invalid_argument("dims: every dimension must be >= 1");
    }
  }
  if (options.samples == 0) {
    throw std::invalid_argument("samples: must be >= 1");
  }
  const InstanceId iid(options.instance);
  const std::size_t n_dims = options.dims.size();

  std::vector<double> factors(kNumFunctions * n_dims);
  parallel_for(factors.size(), [&](std::size_t job) {
    const FunctionId fid(static_cast<int>(job / n_dims) + 1);
    const std::size_t dim = options.dims[job % n_dims];
    Rng rng(derive_seed({options.seed, static_cast<std::uint64_t>(fid.value()), dim}));
    factors[job] = compute_scale_factor(fid, iid, dim, options.samples, rng, options.aggregator);
  });

  CalibrationResult result{ScaleTable::equal(), {}};
  ScaleTable::Values values{};
  for (std::size_t f = 0; f < kNumFunctions; ++f) {
    result.per_dim[f].assign(factors.begin() + static_cast<std::ptrdiff_t>(f * n_dims),
                             factors.begin() + static_cast<std::ptrdiff_t>((f + 1) * n_dims));
    values[f] = round_to_tenth(median(result.per_dim[f]));
  }
  result.table = ScaleTable::recalibrated(values);
  return result;
}

ScaleTable compute_scale_table(std::span<const std::size_t> dims, std::size_t n_samples,
                               std::uint64_t seed, Aggregator agg) {
  CalibrationOptions options;
  options.dims.assign(dims.begin(), dims.end());
  options.samples = n_samples;
  options.seed = seed;
  options.aggregator = agg;
  return calibrate(options).table;
}

std::vector<Deviation> compare_tables(const ScaleTable& computed, const ScaleTable& reference,
                                      double tolerance) {
  std::vector<Deviation> out;
  out.reserve(kNumFunctions);
  for (int f = 1; f <= kNumFunctions; ++f) {
    const FunctionId fid(f);
    const double c = computed[fid];
    const double r = reference[fid];
    const double rel = (c - r) / r;
    out.push_back({fid, c, r, rel, std::abs(rel) > tolerance});
  }
  return out;
}

std::string comparison_report(const CalibrationResult& result, const ScaleTable& reference,
                              double tolerance) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-4s %-30s %9s %9s %9s  %s\n", "fid", "function", "computed",
                "reference", "rel.dev", "flag");
  out += line;
  std::size_t within = 0;
  for (const auto& d : compare_tables(result.table, reference, tolerance)) {
    std::snprintf(line, sizeof line, "F%-3d %-30s %9.1f %9.1f %+8.1f%%  %s\n", d.fid.value(),
                  std::string(function_name(d.fid)).c_str(), d.computed, d.reference,
                  100.0 * d.relative, d.flagged ? "DEVIATES" : "ok");
    out += line;
    within += d.flagged ? 0 : 1;
  }
  std::snprintf(line, sizeof line, "%zu of %d functions within %.0f%% of the reference table\n",
                within, kNumFunctions, 100.0 * tolerance);
  out += line;
  return out;
}

}  // namespace mabbob
