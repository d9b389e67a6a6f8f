#include "mabbob/affine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mabbob/simd/kernels.hpp"
#include "workspace.hpp"

namespace mabbob {
namespace {

constexpr double kWeightSumTolerance = 1e-12;

// max(log10 p, -8) + 8, with p = 0 mapped onto the floor.
double shifted_log_precision(double precision) noexcept {
  return std::max(std::log10(std::max(precision, 1e-300)), kLogPrecisionFloor) -
         kLogPrecisionFloor;
}

void check_point(std::span<const double> x, std::size_t dim) {
  if (x.size() != dim) {
    throw std::invalid_argument("x: expected " + std::to_string(dim) + " coordinates, got " +
                                std::to_string(x.size()));
  }
  for (const double v : x) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("x: coordinates must be finite");
    }
  }
}

void check_in_box(std::span<const double> x, const char* field) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= kLowerBound && x[i] <= kUpperBound)) {
      throw std::invalid_argument(std::string(field) + ": coordinate " + std::to_string(i) +
                                  " outside [-5, 5]");
    }
  }
}

}  // namespace

double rescale_component(double precision, double scale) {
  if (!(precision >= 0.0) || std::isnan(precision)) {
    throw std::invalid_argument("precision: must be non-negative");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("scale: must be positive and finite");
  }
  return shifted_log_precision(precision) / scale;
}

double inverse_rescale(double y) noexcept { return std::pow(10.0, 10.0 * y - 8.0); }

WeightVector::WeightVector(const Values& w) : w_(w) {
  double sum = 0.0;
  std::size_t positive = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i]) || w_[i] < 0.0) {
      throw std::invalid_argument("weights: entry " + std::to_string(i + 1) +
                                  " must be finite and non-negative");
    }
    sum += w_[i];
    positive += w_[i] > 0.0 ? 1 : 0;
  }
  if (positive == 0) {
    throw std::invalid_argument("weights: at least one entry must be positive");
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("weights: must sum to 1");
  }
}

std::size_t WeightVector::positive_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(w_.begin(), w_.end(), [](double v) { return v > 0.0; }));
}

ManyAffineProblem::ManyAffineProblem(std::vector<AffineTerm> terms, std::vector<double> x_opt)
    : x_opt_(std::move(x_opt)) {
  if (x_opt_.empty()) {
    throw std::invalid_argument("dim: must be >= 1, got 0");
  }
  check_in_box(x_opt_, "x_opt");

  double sum = 0.0;
  for (const auto& t : terms) {
    if (!std::isfinite(t.weight) || t.weight < 0.0) {
      throw std::invalid_argument("weights: entries must be finite and non-negative");
    }
    if (!(t.scale > 0.0) || !std::isfinite(t.scale)) {
      throw std::invalid_argument("scale_factors: entries must be positive and finite");
    }
    sum += t.weight;
  }
  std::erase_if(terms, [](const AffineTerm& t) { return t.weight == 0.0; });
  if (terms.empty()) {
    throw std::invalid_argument("weights: at least one entry must be positive");
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("weights: must sum to 1");
  }

  std::sort(terms.begin(), terms.end(), [](const AffineTerm& a, const AffineTerm& b) {
    if (a.fid != b.fid) return a.fid < b.fid;
    if (a.iid != b.iid) return a.iid < b.iid;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.scale < b.scale;
  });

  terms_ = std::move(terms);
  components_.reserve(terms_.size());
  for (const auto& t : terms_) {
    components_.emplace_back(t.fid, t.iid, x_opt_.size());
  }
}

double ManyAffineProblem::operator()(std::span<const double> x) const noexcept {
  const std::size_t n = x_opt_.size();
  const auto& k = simd::active();
  detail::Workspace ws(n);
  auto moved = ws.take(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& component = components_[i];
    k.shift(x.data(), x_opt_.data(), component.optimum_location().data(), moved.data(), n);
    sum += terms_[i].weight * (shifted_log_precision(component.precision(moved)) / terms_[i].scale);
  }
  return inverse_rescale(sum);
}

double ManyAffineProblem::evaluate(std::span<const double> x) const {
  check_point(x, x_opt_.size());
  return (*this)(x);
}

ManyAffineProblem make_many_affine(const WeightVector& weights, const InstanceVector& instances,
                                   std::span<const double> x_opt, std::size_t dim,
                                   const ScaleTable& scale_table) {
  if (x_opt.size() != dim) {
    throw std::invalid_argument("x_opt: expected " + std::to_string(dim) + " coordinates, got " +
                                std::to_string(x_opt.size()));
  }
  std::vector<AffineTerm> terms;
  for (int f = 1; f <= kNumFunctions; ++f) {
    const FunctionId fid(f);
    const InstanceId iid(instances[fid.index()]);
    terms.push_back({fid, iid, weights[fid], scale_table[fid]});
  }
  return ManyAffineProblem(std::move(terms), std::vector<double>(x_opt.begin(), x_opt.end()));
}

PairwiseProblem::PairwiseProblem(FunctionId f1, InstanceId i1, FunctionId f2, InstanceId i2,
                                 double alpha, std::size_t dim)
    : first_(f1, i1, dim), second_(f2, i2, dim), alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha: must be in [0, 1]");
  }
}

PairwiseProblem::PairwiseProblem(FunctionId f1, InstanceId i1, FunctionId f2, InstanceId i2,
                                 double alpha, std::size_t dim, std::vector<double> location)
    : PairwiseProblem(f1, i1, f2, i2, alpha, dim) {
  if (location.size() != dim) {
    throw std::invalid_argument("location: expected " + std::to_string(dim) + " coordinates");
  }
  check_in_box(location, "location");
  location_ = std::move(location);
}

std::span<const double> PairwiseProblem::optimum_location() const noexcept {
  return location_.empty() ? first_.optimum_location() : std::span<const double>(location_);
}

double PairwiseProblem::operator()(std::span<const double> x) const noexcept {
  const std::size_t n = first_.dim();
  const auto& k = simd::active();
  const auto o1 = first_.optimum_location();
  const auto o2 = second_.optimum_location();
  detail::Workspace ws(2 * n);
  auto x1 = ws.take(n);
  auto x2 = ws.take(n);

  const double* anchor = o1.data();
  if (location_.empty()) {
    std::copy(x.begin(), x.end(), x1.begin());
  } else {
    anchor = location_.data();
    k.shift(x.data(), anchor, o1.data(), x1.data(), n);
  }
  k.shift(x.data(), anchor, o2.data(), x2.data(), n);

  const double p1 = std::max(first_.precision(x1), kPrecisionFloor);
  const double p2 = std::max(second_.precision(x2), kPrecisionFloor);
  // 10^(a log10 p1 + (1 - a) log10 p2), kept exact at a in {0, 1}.
  return std::pow(p1, alpha_) * std::pow(p2, 1.0 - alpha_);
}

double PairwiseProblem::evaluate(std::span<const double> x) const {
  check_point(x, first_.dim());
  return (*this)(x);
}

PairwiseProblem combine_pairwise(int f1, std::int64_t i1, int f2, std::int64_t i2, double alpha,
                                 std::size_t dim) {
  return PairwiseProblem(FunctionId(f1), InstanceId(i1), FunctionId(f2), InstanceId(i2), alpha,
                         dim);
}

WeightVector threshold_weights(std::span<const double> raw, double threshold) {
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold: must be in [0, 1)");
  }
  if (raw.size() != kNumFunctions) {
    throw std::invalid_argument("raw: expected 24 values");
  }
  for (const double v : raw) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("raw: values must lie in [0, 1]");
    }
  }

  std::array<double, kNumFunctions> sorted{};
  std::copy(raw.begin(), raw.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  double effective = std::min(threshold, sorted[2]);
  const auto survivors = [&](double t) {
    return std::count_if(raw.begin(), raw.end(), [t](double v) { return v > t; });
  };
  if (survivors(effective) < 2) {
    const double second = sorted[1];
    if (!(second > 0.0)) {
      throw std::invalid_argument("raw: fewer than two positive values");
    }
    effective = 0.0;
    for (const double v : sorted) {
      if (v < second) {
        effective = v;
        break;
      }
    }
  }

  WeightVector::Values w{};
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = raw[i] > effective ? raw[i] - effective : 0.0;
    sum += w[i];
  }
  for (auto& v : w) {
    v /= sum;
  }
  return WeightVector(w);
}

WeightVector sample_weights(Rng& rng, double threshold) {
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold: must be in [0, 1)");
  }
  std::array<double, kNumFunctions> raw{};
  for (auto& v : raw) {
    v = rng.uniform();
  }
  return threshold_weights(raw, threshold);
}

SampledInstance sample_instance(Rng& rng, std::size_t dim, double threshold,
                                std::int64_t instance_range) {
  if (dim == 0) {
    throw std::invalid_argument("dim: must be >= 1, got 0");
  }
  if (instance_range < 1) {
    throw std::invalid_argument("instance_range: must be >= 1");
  }
  auto weights = sample_weights(rng, threshold);
  InstanceVector instances{};
  for (auto& iid : instances) {
    iid = rng.uniform_int(1, instance_range);
  }
  std::vector<double> x_opt(dim);
  for (auto& v : x_opt) {
    v = rng.uniform(kLowerBound, kUpperBound);
  }
  return {weights, instances, std::move(x_opt)};
}

}  // namespace mabbob
