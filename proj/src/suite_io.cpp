#include "mabbob/suite_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "mabbob/format.hpp"
#include "mabbob/parallel.hpp"
#include "mabbob/rng.hpp"

namespace mabbob {
namespace {

using Json = nlohmann::ordered_json;

template <std::size_t N, typename T>
std::array<T, N> fixed_array(const Json& j, const char* field) {
  if (!j.is_array() || j.size() != N) {
    throw std::runtime_error(std::string(field) + ": expected " + std::to_string(N) + " entries");
  }
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = j[i].get<T>();
  }
  return out;
}

const Json& field(const Json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) {
    throw std::runtime_error(std::string("missing field '") + name + "'");
  }
  return *it;
}

Json record_to_json(const ProblemRecord& r) {
  Json j;
  j["problem_id"] = r.problem_id;
  j["seed"] = r.seed;
  j["weights"] = r.weights;
  j["instances"] = r.instances;
  j["x_opt"] = r.x_opt;
  j["scale_factors"] = r.scale_factors;
  return j;
}

ProblemRecord record_from_json(const Json& j) {
  ProblemRecord r;
  r.problem_id = field(j, "problem_id").get<std::size_t>();
  r.seed = field(j, "seed").get<std::uint64_t>();
  r.weights = fixed_array<kNumFunctions, double>(field(j, "weights"), "weights");
  r.instances = fixed_array<kNumFunctions, std::int64_t>(field(j, "instances"), "instances");
  r.x_opt = field(j, "x_opt").get<std::vector<double>>();
  r.scale_factors = fixed_array<kNumFunctions, double>(field(j, "scale_factors"), "scale_factors");
  return r;
}

}  // namespace

SuiteDefinition generate_suite(std::size_t count, std::size_t dim, std::uint64_t seed,
                               double threshold, std::int64_t instance_range,
                               const ScaleTable& scale_table) {
  if (count == 0) {
    throw std::invalid_argument("count: must be >= 1");
  }
  if (dim == 0) {
    throw std::invalid_argument("dim: must be >= 1, got 0");
  }
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold: must be in [0, 1)");
  }
  if (instance_range < 1) {
    throw std::invalid_argument("instance_range: must be >= 1");
  }
  SuiteDefinition suite;
  suite.master_seed = seed;
  suite.dim = dim;
  suite.threshold = threshold;
  suite.instance_range = instance_range;
  suite.scale_source = std::string(provenance_name(scale_table.provenance()));
  suite.problems.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto& rec = suite.problems[k];
    rec.problem_id = k;
    rec.seed = derive_seed({seed, k});
    Rng rng(rec.seed);
    auto sample = sample_instance(rng, dim, threshold, instance_range);
    rec.weights = sample.weights.values();
    rec.instances = sample.instances;
    rec.x_opt = std::move(sample.x_opt);
    rec.scale_factors = scale_table.values();
  }
  return suite;
}

ManyAffineProblem to_problem(const ProblemRecord& record, std::size_t dim) {
  const WeightVector weights(record.weights);
  if (weights.positive_count() < 2) {
    throw std::invalid_argument("weights: at least two entries must be positive");
  }
  const auto table = ScaleTable::recalibrated(record.scale_factors);
  return make_many_affine(weights, record.instances, record.x_opt, dim, table);
}

std::string serialize_suite(const SuiteDefinition& suite) {
  Json j;
  j["version"] = suite.version;
  j["master_seed"] = suite.master_seed;
  j["dim"] = suite.dim;
  j["threshold"] = suite.threshold;
  j["instance_range"] = suite.instance_range;
  j["scale_source"] = suite.scale_source;
  j["problems"] = Json::array();
  for (const auto& r : suite.problems) {
    j["problems"].push_back(record_to_json(r));
  }
  return j.dump(1) + "\n";
}

SuiteDefinition parse_suite(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    SuiteDefinition suite;
    suite.version = field(j, "version").get<std::string>();
    if (suite.version != kSuiteVersion) {
      throw std::runtime_error("unsupported version '" + suite.version + "'");
    }
    suite.master_seed = field(j, "master_seed").get<std::uint64_t>();
    suite.dim = field(j, "dim").get<std::size_t>();
    suite.threshold = field(j, "threshold").get<double>();
    suite.instance_range = field(j, "instance_range").get<std::int64_t>();
    suite.scale_source = field(j, "scale_source").get<std::string>();
    for (const auto& rj : field(j, "problems")) {
      suite.problems.push_back(record_from_json(rj));
    }
    for (std::size_t k = 0; k < suite.problems.size(); ++k) {
      const auto& rec = suite.problems[k];
      if (rec.problem_id != k) {
        throw std::runtime_error("problem_id: expected dense 0-based ids, found " +
                                 std::to_string(rec.problem_id) + " at position " +
                                 std::to_string(k));
      }
      try {
        (void)to_problem(rec, suite.dim);
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("problem " + std::to_string(k) + ": " + e.what());
      }
    }
    return suite;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("suite: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string("suite: ") + e.what());
  }
}

std::string serialize_scale_table(const ScaleTableFile& file) {
  Json j;
  j["version"] = kScaleTableVersion;
  j["provenance"] = provenance_name(file.table.provenance());
  j["aggregator"] = file.aggregator;
  j["dims"] = file.dims;
  j["samples"] = file.samples;
  j["seed"] = file.seed;
  j["scale_factors"] = file.table.values();
  return j.dump(1) + "\n";
}

ScaleTableFile parse_scale_table(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (field(j, "version").get<std::string>() != kScaleTableVersion) {
      throw std::runtime_error("unsupported version");
    }
    ScaleTableFile file;
    const auto values = fixed_array<kNumFunctions, double>(field(j, "scale_factors"), "scale_factors");
    const auto provenance = field(j, "provenance").get<std::string>();
    if (provenance == provenance_name(ScaleProvenance::paper_table_1)) {
      if (values != kPaperScaleFactors) {
        throw std::runtime_error("provenance paper_table_1 but factors differ from the built-in table");
      }
      file.table = ScaleTable::paper();
    } else {
      file.table = ScaleTable::recalibrated(values);
    }
    file.aggregator = field(j, "aggregator").get<std::string>();
    file.dims = field(j, "dims").get<std::vector<std::size_t>>();
    file.samples = field(j, "samples").get<std::size_t>();
    file.seed = field(j, "seed").get<std::uint64_t>();
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("scale table: ") + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("scale table: ") + e.what());
  }
}

std::vector<std::vector<double>> parse_points(std::string_view text, std::size_t dim) {
  std::vector<std::vector<double>> points;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      continue;
    }
    const auto fail = [&](const std::string& why) {
      return std::runtime_error("points: line " + std::to_string(line_no) + ": " + why);
    };
    std::vector<double> point;
    std::size_t pos = 0;
    for (;;) {
      const auto comma = line.find(',', pos);
      std::string_view cell = line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw fail("cannot parse '" + std::string(cell) + "' as a number");
      }
      if (!std::isfinite(v)) {
        throw fail("non-finite coordinate");
      }
      point.push_back(v);
      if (comma == std::string_view::npos) {
        break;
      }
      pos = comma + 1;
    }
    if (point.size() != dim) {
      throw fail("expected " + std::to_string(dim) + " columns, got " + std::to_string(point.size()));
    }
    points.push_back(std::move(point));
  }
  return points;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw std::runtime_error("failed writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename onto '" + path.string() + "'");
  }
}

std::vector<SuiteRunRow> run_suite(const SuiteDefinition& suite, Algorithm algo,
                                   std::size_t budget_multiplier, std::size_t runs,
                                   std::uint64_t seed) {
  if (runs == 0) {
    throw std::invalid_argument("runs: must be >= 1");
  }
  if (budget_multiplier == 0) {
    throw std::invalid_argument("budget_multiplier: must be >= 1");
  }
  std::vector<ManyAffineProblem> problems;
  problems.reserve(suite.problems.size());
  for (const auto& rec : suite.problems) {
    problems.push_back(to_problem(rec, suite.dim));
  }
  const Budget budget = Budget::for_dim(suite.dim, budget_multiplier);
  std::vector<SuiteRunRow> rows(problems.size() * runs);
  parallel_for(rows.size(), [&](std::size_t job) {
    const std::size_t p = job / runs;
    const std::size_t r = job % runs;
    const auto& problem = problems[p];
    const std::uint64_t run_seed = derive_seed({seed, p, r});
    const auto trace = run_optimizer(
        algo, [&](std::span<const double> x) { return problem(x); }, suite.dim, budget, run_seed);
    rows[job] = {p, r, run_seed, aocc(trace)};
  });
  return rows;
}

void write_run_csv(std::ostream& out, std::span<const SuiteRunRow> rows) {
  out << "problem_id,run,seed,aocc\n";
  std::size_t i = 0;
  while (i < rows.size()) {
    const std::size_t pid = rows[i].problem_id;
    double sum = 0.0;
    std::size_t n = 0;
    for (; i < rows.size() && rows[i].problem_id == pid; ++i, ++n) {
      out << pid << ',' << rows[i].run << ',' << rows[i].seed << ','
          << format_shortest(rows[i].aocc) << '\n';
      sum += rows[i].aocc;
    }
    out << pid << ",mean,," << format_shortest(sum / static_cast<double>(n)) << '\n';
  }
}

}  // namespace mabbob
