#pragma once

#include <array>
#include <span>
#include <string_view>

#include "mabbob/bbob.hpp"

namespace mabbob {

enum class ScaleProvenance { paper_table_1, recalibrated };

std::string_view provenance_name(ScaleProvenance p) noexcept;

// Per-function divisors S_i applied to the shifted log-precision before blending.
class ScaleTable {
 public:
  using Values = std::array<double, kNumFunctions>;

  // The reference factors, F1 = 11.0 ... F24 = 12.1.
  static ScaleTable paper();
  // S_i = 10 for all i (no per-function rescaling).
  static ScaleTable equal();
  // Throws std::invalid_argument when an entry is not a positive finite number.
  static ScaleTable recalibrated(const Values& values);

  [[nodiscard]] double operator[](FunctionId fid) const noexcept { return values_[fid.index()]; }
  [[nodiscard]] const Values& values() const noexcept { return values_; }
  [[nodiscard]] ScaleProvenance provenance() const noexcept { return provenance_; }

  friend bool operator==(const ScaleTable&, const ScaleTable&) = default;

 private:
  ScaleTable(const Values& values, ScaleProvenance provenance);

  Values values_;
  ScaleProvenance provenance_;
};

inline constexpr ScaleTable::Values kPaperScaleFactors{
    11.0, 17.5, 12.3, 12.6, 11.5, 15.3, 12.1, 15.3, 15.2, 17.4, 13.4, 20.4,
    12.9, 10.4, 12.3, 10.3, 9.8,  10.6, 10.0, 14.7, 10.7, 10.8, 9.0,  12.1,
};

}  // namespace mabbob
