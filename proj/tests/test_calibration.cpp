#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mabbob/calibration.hpp"

using namespace mabbob;

TEST_CASE("aggregator names round-trip") {
  for (const auto agg : {Aggregator::min, Aggregator::mean, Aggregator::max, Aggregator::mid_range,
                         Aggregator::equal}) {
    const auto parsed = parse_aggregator(aggregator_name(agg));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == agg);
  }
  CHECK_FALSE(parse_aggregator("median").has_value());
}

TEST_CASE("aggregate_log_precision on hand-made samples") {
  const std::vector<double> p{1e-12, 1.0, 1e4};
  // Aggregate first, then shift: min -> 1e-12 floors to 0; max -> 12; mid-range of
  // the raw values is ~5000, log10 = 3.69897 -> 11.69897.
  CHECK(aggregate_log_precision(p, Aggregator::min) == 0.0);
  CHECK(aggregate_log_precision(p, Aggregator::max) == doctest::Approx(12.0));
  CHECK(aggregate_log_precision(p, Aggregator::mid_range) ==
        doctest::Approx(std::log10(0.5 * (1e4 + 1e-12)) + 8.0));
  CHECK(aggregate_log_precision(p, Aggregator::mean) ==
        doctest::Approx(std::log10((1e-12 + 1.0 + 1e4) / 3.0) + 8.0));
  CHECK_THROWS_AS(aggregate_log_precision(p, Aggregator::equal), std::invalid_argument);
  CHECK_THROWS_AS(aggregate_log_precision(std::vector<double>{}, Aggregator::min),
                  std::invalid_argument);
}

TEST_CASE("constant unit precision gives 8 for every aggregator") {
  const PrecisionFn one = [](std::span<const double>) { return 1.0; };
  for (const auto agg : {Aggregator::min, Aggregator::mean, Aggregator::max, Aggregator::mid_range}) {
    Rng rng(1);
    CHECK(compute_scale_factor(one, 3, 100, rng, agg) == 8.0);
  }
  Rng rng(1);
  CHECK_THROWS_AS(compute_scale_factor(one, 3, 100, rng, Aggregator::equal), std::invalid_argument);
  CHECK_THROWS_AS(compute_scale_factor(one, 3, 0, rng, Aggregator::min), std::invalid_argument);
  CHECK_THROWS_AS(compute_scale_factor(one, 0, 10, rng, Aggregator::min), std::invalid_argument);
}

TEST_CASE("aggregates lie within the range of the clamped transform and are ordered") {
  for (int fid = 1; fid <= kNumFunctions; ++fid) {
    CAPTURE(fid);
    const auto c = create_component(fid, 1, 3);
    double hi = 0.0;
    std::vector<double> values;
    for (const auto agg : {Aggregator::min, Aggregator::mid_range, Aggregator::max}) {
      // Same seed, so all three see the same sample set.
      Rng rng(42);
      values.push_back(compute_scale_factor(FunctionId(fid), InstanceId(1), 3, 2000, rng, agg));
    }
    Rng rng(42);
    for (int i = 0; i < 2000; ++i) {
      std::vector<double> x(3);
      for (auto& v : x) v = rng.uniform(-5.0, 5.0);
      hi = std::max(hi, c.evaluate_raw(x));
    }
    CHECK(values[0] >= 0.0);
    CHECK(values[0] <= values[1]);
    CHECK(values[1] <= values[2]);
    CHECK(values[2] == doctest::Approx(std::log10(hi) + 8.0));
  }
}

TEST_CASE("sphere in 5-d calibrates near its reference factor") {
  Rng rng(derive_seed({1, 1, 5}));
  const double s = compute_scale_factor(FunctionId(1), InstanceId(1), 5, 50000, rng, Aggregator::mid_range);
  CHECK(s >= 11.0 * 0.85);
  CHECK(s <= 11.0 * 1.15);
}

TEST_CASE("EQUAL table and provenance") {
  CalibrationOptions opt;
  opt.aggregator = Aggregator::equal;
  const auto result = calibrate(opt);
  for (const double v : result.table.values()) {
    CHECK(v == 10.0);
  }
  CHECK(result.table == ScaleTable::equal());
  CHECK(result.table.provenance() == ScaleProvenance::recalibrated);
  CHECK(ScaleTable::paper().provenance() == ScaleProvenance::paper_table_1);
  CHECK(ScaleTable::paper()[FunctionId(1)] == 11.0);
  CHECK(ScaleTable::paper()[FunctionId(24)] == 12.1);
}

TEST_CASE("rounding and median helpers") {
  CHECK(round_to_tenth(11.04) == doctest::Approx(11.0));
  CHECK(round_to_tenth(11.05) == doctest::Approx(11.1));
  CHECK(round_to_tenth(11.25) == doctest::Approx(11.3));
  CHECK(round_to_tenth(9.96) == doctest::Approx(10.0));
  CHECK(median({3.0}) == 3.0);
  CHECK(median({5.0, 1.0, 3.0}) == 3.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK_THROWS_AS(median({}), std::invalid_argument);
}

TEST_CASE("single dimension: the table equals that dimension's rounded factors") {
  CalibrationOptions opt;
  opt.dims = {3};
  opt.samples = 2000;
  opt.seed = 9;
  const auto result = calibrate(opt);
  for (int fid = 1; fid <= kNumFunctions; ++fid) {
    const FunctionId f(fid);
    REQUIRE(result.per_dim[f.index()].size() == 1);
    CHECK(result.table[f] == round_to_tenth(result.per_dim[f.index()][0]));
  }
}

TEST_CASE("same seed gives the same table, different seeds may not") {
  CalibrationOptions opt;
  opt.dims = {2, 5};
  opt.samples = 3000;
  opt.seed = 123;
  const auto a = calibrate(opt);
  const auto b = calibrate(opt);
  CHECK(a.table == b.table);
  CHECK(a.per_dim == b.per_dim);
  opt.seed = 124;
  const auto c = calibrate(opt);
  CHECK(a.per_dim != c.per_dim);
}

TEST_CASE("comparison against the built-in table") {
  auto values = kPaperScaleFactors;
  values[0] = 11.0 * 1.2;   // flagged
  values[1] = 17.5 * 0.9;   // within tolerance
  const auto table = ScaleTable::recalibrated(values);
  const auto dev = compare_tables(table, ScaleTable::paper());
  REQUIRE(dev.size() == 24);
  CHECK(dev[0].flagged);
  CHECK(dev[0].relative == doctest::Approx(0.2));
  CHECK_FALSE(dev[1].flagged);
  CHECK(dev[1].relative == doctest::Approx(-0.1));
  CHECK(std::count_if(dev.begin(), dev.end(), [](const Deviation& d) { return d.flagged; }) == 1);

  CalibrationResult r{table, {}};
  const auto report = comparison_report(r, ScaleTable::paper());
  CHECK(report.find("23 of 24 functions within 15%") != std::string::npos);
  CHECK(report.find("DEVIATES") != std::string::npos);

  values[3] = 0.0;
  CHECK_THROWS_AS(ScaleTable::recalibrated(values), std::invalid_argument);
}

TEST_CASE("mid-range factors are stable across dimensions 5, 10 and 20") {
  // Regression check with slack: drifting functions are reported, and a
  // couple are tolerated since small dimensions are known to wander.
  CalibrationOptions opt;
  opt.dims = {5, 10, 20};
  opt.samples = 20000;
  const auto result = calibrate(opt);
  int stable = 0;
  for (int fid = 1; fid <= kNumFunctions; ++fid) {
    const auto& v = result.per_dim[static_cast<std::size_t>(fid - 1)];
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const bool ok = *hi <= 1.25 * *lo;
    stable += ok ? 1 : 0;
    if (!ok) {
      MESSAGE("F" << fid << " factors " << v[0] << ", " << v[1] << ", " << v[2]
                  << " differ by more than 25%");
    }
  }
  MESSAGE(stable << "/24 functions stable within 25% across dims {5, 10, 20}");
  CHECK(stable >= 22);
}
