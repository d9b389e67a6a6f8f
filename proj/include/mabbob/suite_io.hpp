#pragma once
// Suite files, scale-table files, point files and suite-level experiments.
//
// Suite file (JSON, keys in this order):
//   {
//     "version": "mabbob-suite/1",
//     "master_seed": <uint64>, "dim": <int>, "threshold": <real>,
//     "instance_range": <int>, "scale_source": "paper_table_1" | "recalibrated",
//     "problems": [
//       { "problem_id": <0-based index>, "seed": <uint64>,
//         "weights": [24 reals], "instances": [24 ints],
//         "x_opt": [dim reals], "scale_factors": [24 reals] }, ...
//     ]
//   }
// Reals are written in shortest round-trip form, so parse followed by
// serialize reproduces a file byte for byte.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mabbob/affine.hpp"
#include "mabbob/calibration.hpp"
#include "mabbob/performance.hpp"
#include "mabbob/scale_table.hpp"

namespace mabbob {

inline constexpr std::string_view kSuiteVersion = "mabbob-suite/1";
inline constexpr std::string_view kScaleTableVersion = "mabbob-scale-table/1";

struct ProblemRecord {
  std::size_t problem_id = 0;
  std::uint64_t seed = 0;
  WeightVector::Values weights{};
  InstanceVector instances{};
  std::vector<double> x_opt;
  ScaleTable::Values scale_factors{};

  friend bool operator==(const ProblemRecord&, const ProblemRecord&) = default;
};

struct SuiteDefinition {
  std::string version{kSuiteVersion};
  std::uint64_t master_seed = 0;
  std::size_t dim = 0;
  double threshold = kDefaultThreshold;
  std::int64_t instance_range = kDefaultInstanceRange;
  std::string scale_source{provenance_name(ScaleProvenance::paper_table_1)};
  std::vector<ProblemRecord> problems;

  friend bool operator==(const SuiteDefinition&, const SuiteDefinition&) = default;
};

// Problem k is drawn by sample_instance from Rng(derive_seed({seed, k})).
// Throws std::invalid_argument for count == 0 or invalid sampling parameters.
SuiteDefinition generate_suite(std::size_t count, std::size_t dim, std::uint64_t seed,
                               double threshold, std::int64_t instance_range,
                               const ScaleTable& scale_table);

// Checks the record against the weight (>= 2 positive, sum 1), instance and
// x_opt invariants, then builds the problem. Throws std::invalid_argument.
ManyAffineProblem to_problem(const ProblemRecord& record, std::size_t dim);

std::string serialize_suite(const SuiteDefinition& suite);
// Throws std::runtime_error ("suite: ...") on malformed or invalid input.
SuiteDefinition parse_suite(std::string_view text);

struct ScaleTableFile {
  ScaleTable table = ScaleTable::paper();
  std::string aggregator;
  std::vector<std::size_t> dims;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

std::string serialize_scale_table(const ScaleTableFile& file);
// Throws std::runtime_error ("scale table: ...").
ScaleTableFile parse_scale_table(std::string_view text);

// Headerless CSV, one point of `dim` finite reals per non-empty line.
// Throws std::runtime_error naming the 1-based line number.
std::vector<std::vector<double>> parse_points(std::string_view text, std::size_t dim);

std::string read_text_file(const std::filesystem::path& path);
// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct SuiteRunRow {
  std::size_t problem_id;
  std::size_t run;
  std::uint64_t seed;
  double aocc;
};

// `runs` runs of `algo` per problem with budget budget_multiplier * dim; run r
// on problem p uses seed derive_seed({seed, p, r}).
std::vector<SuiteRunRow> run_suite(const SuiteDefinition& suite, Algorithm algo,
                                   std::size_t budget_multiplier, std::size_t runs,
                                   std::uint64_t seed);

// Header "problem_id,run,seed,aocc"; after each problem's runs a row with
// run = "mean", an empty seed and the mean AOCC of that problem.
void write_run_csv(std::ostream& out, std::span<const SuiteRunRow> rows);

}  // namespace mabbob
