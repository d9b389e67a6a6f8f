#pragma once
// Affine combinations of BBOB components in log-precision space.
//
// Pairwise:      C(x) = 10^(a log10 P1(x) + (1 - a) log10 P2(x - O1 + O2))
// Many-affine:   MA(x) = Rinv(sum_i W_i R_i(P_i(x - X_opt + O_i)))
//   R_i(p)  = (max(log10 p, -8) + 8) / S_i
//   Rinv(y) = 10^(10 y - 8)
// where P_i is the precision of component i and O_i its optimum. Log
// arguments are floored at 1e-8, so both forms are total and bottom out at
// exactly 1e-8 at their optimum.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mabbob/bbob.hpp"
#include "mabbob/rng.hpp"
#include "mabbob/scale_table.hpp"

namespace mabbob {

inline constexpr double kPrecisionFloor = 1e-8;
inline constexpr double kLogPrecisionFloor = -8.0;
inline constexpr double kDefaultThreshold = 0.85;
inline constexpr std::int64_t kDefaultInstanceRange = 100;

// R_i. Throws std::invalid_argument for a negative/non-finite precision or s <= 0.
double rescale_component(double precision, double scale);

// R^-1.
double inverse_rescale(double y) noexcept;

// Non-negative weights summing to 1 (within 1e-12), at least one positive.
class WeightVector {
 public:
  using Values = std::array<double, kNumFunctions>;

  // Throws std::invalid_argument naming "weights" on any invariant violation.
  explicit WeightVector(const Values& w);

  [[nodiscard]] const Values& values() const noexcept { return w_; }
  [[nodiscard]] double operator[](FunctionId fid) const noexcept { return w_[fid.index()]; }
  [[nodiscard]] std::size_t positive_count() const noexcept;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  Values w_;
};

using InstanceVector = std::array<std::int64_t, kNumFunctions>;

// One weighted, scaled component of a many-affine problem.
struct AffineTerm {
  FunctionId fid;
  InstanceId iid;
  double weight;
  double scale;
};

class ManyAffineProblem {
 public:
  // Terms with zero weight are dropped and never instantiated. The remaining
  // terms are summed in a canonical order, so any permutation of the input
  // list defines the same function bit for bit.
  // Throws std::invalid_argument when x_opt leaves [-5, 5]^dim, a weight is
  // negative or non-finite, the weights do not sum to 1, or a scale is not positive.
  ManyAffineProblem(std::vector<AffineTerm> terms, std::vector<double> x_opt);

  [[nodiscard]] std::size_t dim() const noexcept { return x_opt_.size(); }
  [[nodiscard]] std::span<const double> x_opt() const noexcept { return x_opt_; }
  [[nodiscard]] std::span<const AffineTerm> terms() const noexcept { return terms_; }

  // Throws std::invalid_argument on a length mismatch or non-finite input.
  [[nodiscard]] double evaluate(std::span<const double> x) const;

  // Unchecked; x.size() must equal dim().
  [[nodiscard]] double operator()(std::span<const double> x) const noexcept;

 private:
  std::vector<AffineTerm> terms_;
  std::vector<ComponentProblem> components_;
  std::vector<double> x_opt_;
};

// Builds the problem from per-function weights and instances (index = fid - 1).
ManyAffineProblem make_many_affine(const WeightVector& weights, const InstanceVector& instances,
                                   std::span<const double> x_opt, std::size_t dim,
                                   const ScaleTable& scale_table);

class PairwiseProblem {
 public:
  // Optimum at O_{f1,i1}. Throws std::invalid_argument when alpha is outside [0, 1].
  PairwiseProblem(FunctionId f1, InstanceId i1, FunctionId f2, InstanceId i2, double alpha,
                  std::size_t dim);

  // Same landscape translated so that its optimum sits at `location`.
  PairwiseProblem(FunctionId f1, InstanceId i1, FunctionId f2, InstanceId i2, double alpha,
                  std::size_t dim, std::vector<double> location);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] std::size_t dim() const noexcept { return first_.dim(); }
  [[nodiscard]] const ComponentProblem& first() const noexcept { return first_; }
  [[nodiscard]] const ComponentProblem& second() const noexcept { return second_; }
  [[nodiscard]] std::span<const double> optimum_location() const noexcept;

  // Throws std::invalid_argument on a length mismatch or non-finite input.
  [[nodiscard]] double evaluate(std::span<const double> x) const;

  [[nodiscard]] double operator()(std::span<const double> x) const noexcept;

 private:
  ComponentProblem first_;
  ComponentProblem second_;
  double alpha_;
  std::vector<double> location_;  // empty: optimum of the first component
};

PairwiseProblem combine_pairwise(int f1, std::int64_t i1, int f2, std::int64_t i2, double alpha,
                                 std::size_t dim);

// Thresholding and normalisation applied to 24 raw uniform draws:
//   effective = min(threshold, third-highest raw value)
//   w_i = max(raw_i - effective, 0), keeping only raw_i > effective
//   w /= sum(w)
// If ties leave fewer than two survivors, the effective threshold drops to
// the largest raw value below the second-highest one (or 0).
// Throws std::invalid_argument for a threshold outside [0, 1) or raw values outside [0, 1].
WeightVector threshold_weights(std::span<const double> raw, double threshold);

WeightVector sample_weights(Rng& rng, double threshold = kDefaultThreshold);

struct SampledInstance {
  WeightVector weights;
  InstanceVector instances;
  std::vector<double> x_opt;
};

// Weights, then 24 instance ids uniform in [1, instance_range], then x_opt
// uniform in [-5, 5]^dim, all from `rng` in that order.
SampledInstance sample_instance(Rng& rng, std::size_t dim, double threshold = kDefaultThreshold,
                                std::int64_t instance_range = kDefaultInstanceRange);

}  // namespace mabbob
