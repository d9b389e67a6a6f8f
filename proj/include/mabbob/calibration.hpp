#pragma once
// Scale-factor calibration by uniform random sampling.
//
// For one (function, instance, dimension) the precision of n uniform points
// in [-5, 5]^d is aggregated (min, mean, max or mid-range) and the aggregate
// is mapped to shifted log-precision, max(log10(.), -8) + 8. A table entry is
// the median of that factor over a set of dimensions, rounded half-up to one
// decimal.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mabbob/bbob.hpp"
#include "mabbob/rng.hpp"
#include "mabbob/scale_table.hpp"

namespace mabbob {

enum class Aggregator { min, mean, max, mid_range, equal };

std::string_view aggregator_name(Aggregator agg) noexcept;
std::optional<Aggregator> parse_aggregator(std::string_view name) noexcept;

using PrecisionFn = std::function<double(std::span<const double>)>;

// Throws std::invalid_argument for an empty sample or Aggregator::equal.
double aggregate_log_precision(std::span<const double> precisions, Aggregator agg);

// Throws std::invalid_argument for n_samples == 0, dim == 0 or Aggregator::equal.
double compute_scale_factor(const PrecisionFn& precision, std::size_t dim, std::size_t n_samples,
                            Rng& rng, Aggregator agg);

double compute_scale_factor(FunctionId fid, InstanceId iid, std::size_t dim,
                            std::size_t n_samples, Rng& rng, Aggregator agg);

inline const std::vector<std::size_t> kDefaultCalibrationDims{2, 3, 5, 10, 20, 40};
inline constexpr std::size_t kDefaultCalibrationSamples = 50'000;

struct CalibrationOptions {
  std::vector<std::size_t> dims = kDefaultCalibrationDims;
  std::size_t samples = kDefaultCalibrationSamples;
  std::uint64_t seed = 1;
  Aggregator aggregator = Aggregator::mid_range;
  std::int64_t instance = 1;
};

struct CalibrationResult {
  ScaleTable table;
  // Unrounded factor per function and per requested dimension (empty for Aggregator::equal).
  std::array<std::vector<double>, kNumFunctions> per_dim;
};

// Each (function, dimension) pair draws from its own stream seeded by
// derive_seed({seed, fid, dim}), so the table is reproducible and the pairs
// may run in parallel.
CalibrationResult calibrate(const CalibrationOptions& options);

ScaleTable compute_scale_table(std::span<const std::size_t> dims, std::size_t n_samples,
                               std::uint64_t seed, Aggregator agg);

double round_to_tenth(double v) noexcept;
double median(std::vector<double> values);

struct Deviation {
  FunctionId fid;
  double computed;
  double reference;
  double relative;  // (computed - reference) / reference
  bool flagged;     // |relative| > tolerance
};

std::vector<Deviation> compare_tables(const ScaleTable& computed, const ScaleTable& reference,
                                      double tolerance = 0.15);

// Plain-text table of compare_tables plus a summary line.
std::string comparison_report(const CalibrationResult& result, const ScaleTable& reference,
                              double tolerance = 0.15);

}  // namespace mabbob
