#pragma once
// The 24 noiseless BBOB functions as components with exact optima.
//
// Each component reports precision, f(x) - f(O), which is zero at its
// optimum O and non-negative everywhere. Instance parameters (shifts,
// rotations, conditioning permutations, Gallagher peaks) are drawn from a
// seeded generator keyed by (fid, iid, dim); they follow the BBOB 2009
// construction structurally but are not bit-compatible with COCO.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace mabbob {

inline constexpr int kNumFunctions = 24;
inline constexpr double kLowerBound = -5.0;
inline constexpr double kUpperBound = 5.0;

class FunctionId {
 public:
  // Throws std::invalid_argument naming "fid" when outside [1, 24].
  explicit FunctionId(int id);

  [[nodiscard]] int value() const noexcept { return id_; }
  [[nodiscard]] std::size_t index() const noexcept { return static_cast<std::size_t>(id_ - 1); }

  friend auto operator<=>(const FunctionId&, const FunctionId&) = default;

 private:
  int id_;
};

class InstanceId {
 public:
  // Throws std::invalid_argument naming "iid" when below 1.
  explicit InstanceId(std::int64_t id);

  [[nodiscard]] std::int64_t value() const noexcept { return id_; }

  friend auto operator<=>(const InstanceId&, const InstanceId&) = default;

 private:
  std::int64_t id_;
};

std::string_view function_name(FunctionId fid) noexcept;

class ComponentProblem {
 public:
  // Throws std::invalid_argument naming "dim" when dim == 0.
  ComponentProblem(FunctionId fid, InstanceId iid, std::size_t dim);

  [[nodiscard]] FunctionId function() const noexcept;
  [[nodiscard]] InstanceId instance() const noexcept;
  [[nodiscard]] std::size_t dim() const noexcept;

  // Precision at x. Throws std::invalid_argument on a length mismatch or a
  // non-finite coordinate. Points outside [-5, 5]^dim are allowed.
  [[nodiscard]] double evaluate_raw(std::span<const double> x) const;

  // Same value without argument checks; x.size() must equal dim().
  [[nodiscard]] double precision(std::span<const double> x) const noexcept;

  // The point where the precision is exactly zero.
  [[nodiscard]] std::span<const double> optimum_location() const noexcept;

  struct Params;  // defined in bbob.cpp

 private:
  std::shared_ptr<const Params> params_;
};

inline ComponentProblem create_component(int fid, std::int64_t iid, std::size_t dim) {
  return ComponentProblem(FunctionId(fid), InstanceId(iid), dim);
}

}  // namespace mabbob
