#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aroc/curve.hpp"
#include "aroc/simulation.hpp"
#include "aroc/testing.hpp"
#include "aroc/types.hpp"

namespace aroc {

inline constexpr int result_schema_version = 1;

struct CsvOptions {
  char delimiter = ',';
  std::string positive_label = "1";
  std::string negative_label = "0";
  bool negate_marker = false;
};

namespace detail {

/// One CSV record, honoring double quotes around fields (embedded delimiters
/// and doubled quotes supported; multi-line fields are not).
inline std::vector<std::string> split_csv_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

inline bool is_missing(const std::string& s) {
  if (s.empty()) return true;
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == "na" || lower == "nan" || lower == "null";
}

/// Locale-independent double parse; nullopt marks a non-numeric cell.
inline std::optional<double> parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

inline std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                               const std::filesystem::path& path) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return i;
  }
  throw std::runtime_error(path.string() + ": column '" + name + "' not found in header");
}

}  // namespace detail

/// Reads a two-population study from a delimited text file with a header
/// row. Rows are partitioned by the status column; rows with missing values
/// in any used column are dropped (the count is recorded in the metadata).
inline StudyDataset read_csv(const std::filesystem::path& path, const std::string& status_col,
                             const std::string& marker_col, const std::string& covariate_col,
                             const CsvOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  const auto header = detail::split_csv_line(line, options.delimiter);
  const std::size_t c_status = detail::find_column(header, status_col, path);
  const std::size_t c_marker = detail::find_column(header, marker_col, path);
  const std::size_t c_covariate = detail::find_column(header, covariate_col, path);

  StudyDataset data;
  data.meta.marker_name = options.negate_marker ? "-" + marker_col : marker_col;
  data.meta.covariate_name = covariate_col;
  data.meta.marker_negated = options.negate_marker;

  std::size_t row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv_line(line, options.delimiter);
    const std::size_t needed = std::max({c_status, c_marker, c_covariate});
    if (fields.size() <= needed) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row << " has " << fields.size()
          << " fields, expected at least " << needed + 1;
      throw std::runtime_error(msg.str());
    }

    const std::string status = detail::trim(fields[c_status]);
    const std::string marker_raw = detail::trim(fields[c_marker]);
    const std::string covariate_raw = detail::trim(fields[c_covariate]);
    if (detail::is_missing(status) || detail::is_missing(marker_raw) ||
        detail::is_missing(covariate_raw)) {
      ++data.meta.dropped_rows;
      continue;
    }

    const auto marker = detail::parse_double(marker_raw);
    if (!marker) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row << ": non-numeric value '" << marker_raw
          << "' in column '" << marker_col << "'";
      throw std::runtime_error(msg.str());
    }
    const auto covariate = detail::parse_double(covariate_raw);
    if (!covariate) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row << ": non-numeric value '" << covariate_raw
          << "' in column '" << covariate_col << "'";
      throw std::runtime_error(msg.str());
    }

    PairedSample* target = nullptr;
    if (status == options.positive_label) {
      target = &data.diseased;
    } else if (status == options.negative_label) {
      target = &data.healthy;
    } else {
      std::ostringstream msg;
      msg << path.string() << ": row " << row << ": status '" << status << "' is neither '"
          << options.positive_label << "' nor '" << options.negative_label << "'";
      throw std::runtime_error(msg.str());
    }
    target->covariate.push_back(*covariate);
    target->marker.push_back(options.negate_marker ? -*marker : *marker);
  }

  if (data.diseased.size() == 0) {
    throw std::runtime_error(path.string() + ": no rows with status '" +
                             options.positive_label + "'");
  }
  if (data.healthy.size() == 0) {
    throw std::runtime_error(path.string() + ": no rows with status '" +
                             options.negative_label + "'");
  }
  return data;
}

// --- JSON serialization -----------------------------------------------------

inline nlohmann::json to_json(const Curve& c) {
  return nlohmann::json{{"grid", c.grid}, {"values", c.values}};
}

inline Curve curve_from_json(const nlohmann::json& j) {
  Curve c;
  c.grid = j.at("grid").get<std::vector<double>>();
  c.values = j.at("values").get<std::vector<double>>();
  return c;
}

inline nlohmann::json to_json(const TestResult& r) {
  nlohmann::json stats, pvals, reps;
  for (const auto& [kind, v] : r.statistics) stats[to_string(kind)] = v;
  for (const auto& [kind, v] : r.p_values) pvals[to_string(kind)] = v;
  for (const auto& [kind, v] : r.bootstrap_replicates) reps[to_string(kind)] = v;
  return nlohmann::json{
      {"schema_version", result_schema_version},
      {"kind", "test_result"},
      {"B", r.bootstrap_iterations},
      {"rho", r.rho},
      {"master_seed", r.master_seed},
      {"split_seed", r.split_seed},
      {"bandwidths", {{"diseased", r.bandwidth_diseased}, {"healthy", r.bandwidth_healthy}}},
      {"statistics", stats},
      {"p_values", pvals},
      {"bootstrap_replicates", reps},
      {"roc_curve", to_json(r.roc_curve)},
      {"aroc_curve", to_json(r.aroc_curve)},
      {"split_record",
       {{"roc_diseased", r.split_record.roc_diseased},
        {"roc_healthy", r.split_record.roc_healthy},
        {"aroc_diseased", r.split_record.aroc_diseased},
        {"aroc_healthy", r.split_record.aroc_healthy}}},
      {"auc", auc(r.roc_curve)},
      {"aauc", auc(r.aroc_curve)},
  };
}

inline TestResult test_result_from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != result_schema_version) {
    throw std::runtime_error("unsupported result schema version");
  }
  TestResult r;
  r.bootstrap_iterations = j.at("B").get<std::size_t>();
  r.rho = j.at("rho").get<double>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.split_seed = j.at("split_seed").get<std::uint64_t>();
  r.bandwidth_diseased = j.at("bandwidths").at("diseased").get<double>();
  r.bandwidth_healthy = j.at("bandwidths").at("healthy").get<double>();
  for (const auto& [key, value] : j.at("statistics").items()) {
    r.statistics[distance_from_string(key)] = value.get<double>();
  }
  for (const auto& [key, value] : j.at("p_values").items()) {
    r.p_values[distance_from_string(key)] = value.get<double>();
  }
  for (const auto& [key, value] : j.at("bootstrap_replicates").items()) {
    r.bootstrap_replicates[distance_from_string(key)] = value.get<std::vector<double>>();
  }
  r.roc_curve = curve_from_json(j.at("roc_curve"));
  r.aroc_curve = curve_from_json(j.at("aroc_curve"));
  const auto& sr = j.at("split_record");
  r.split_record.roc_diseased = sr.at("roc_diseased").get<std::vector<std::size_t>>();
  r.split_record.roc_healthy = sr.at("roc_healthy").get<std::vector<std::size_t>>();
  r.split_record.aroc_diseased = sr.at("aroc_diseased").get<std::vector<std::size_t>>();
  r.split_record.aroc_healthy = sr.at("aroc_healthy").get<std::vector<std::size_t>>();
  return r;
}

inline nlohmann::json to_json(const RejectionTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"scenario", std::string(1, to_char(r.scenario))},
                    {"n_diseased", r.n_diseased},
                    {"n_healthy", r.n_healthy},
                    {"rho", r.rho},
                    {"distance", to_string(r.distance)},
                    {"alpha", r.alpha},
                    {"proportion", r.proportion},
                    {"interval_lo", r.interval_lo},
                    {"interval_hi", r.interval_hi},
                    {"replications", r.replications},
                    {"B", r.bootstrap_iterations}});
  }
  return nlohmann::json{
      {"schema_version", result_schema_version}, {"kind", "rejection_table"}, {"rows", rows}};
}

namespace detail {

/// Serialize-then-write: a failed serialization never leaves a partial file.
inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

inline std::string test_result_to_csv(const TestResult& r) {
  std::ostringstream os;
  os << "key,value\n";
  os << "schema_version," << result_schema_version << "\n";
  os << "B," << r.bootstrap_iterations << "\n";
  os << "rho," << detail::format_double(r.rho) << "\n";
  os << "master_seed," << r.master_seed << "\n";
  os << "split_seed," << r.split_seed << "\n";
  os << "bandwidth_diseased," << detail::format_double(r.bandwidth_diseased) << "\n";
  os << "bandwidth_healthy," << detail::format_double(r.bandwidth_healthy) << "\n";
  for (const auto& [kind, v] : r.statistics) {
    os << "statistic_" << to_string(kind) << "," << detail::format_double(v) << "\n";
  }
  for (const auto& [kind, v] : r.p_values) {
    os << "p_value_" << to_string(kind) << "," << detail::format_double(v) << "\n";
  }
  os << "auc," << detail::format_double(auc(r.roc_curve)) << "\n";
  os << "aauc," << detail::format_double(auc(r.aroc_curve)) << "\n";
  os << "\ncurve,p,value\n";
  for (std::size_t k = 0; k < r.roc_curve.size(); ++k) {
    os << "roc," << detail::format_double(r.roc_curve.grid[k]) << ","
       << detail::format_double(r.roc_curve.values[k]) << "\n";
  }
  for (std::size_t k = 0; k < r.aroc_curve.size(); ++k) {
    os << "aroc," << detail::format_double(r.aroc_curve.grid[k]) << ","
       << detail::format_double(r.aroc_curve.values[k]) << "\n";
  }
  return os.str();
}

inline std::string rejection_table_to_csv(const RejectionTable& table) {
  std::ostringstream os;
  os << "scenario,n_diseased,n_healthy,rho,distance,alpha,proportion,interval_lo,interval_hi,"
        "replications,B\n";
  for (const auto& r : table.rows) {
    os << to_char(r.scenario) << "," << r.n_diseased << "," << r.n_healthy << ","
       << detail::format_double(r.rho) << "," << to_string(r.distance) << ","
       << detail::format_double(r.alpha) << "," << detail::format_double(r.proportion) << ","
       << detail::format_double(r.interval_lo) << "," << detail::format_double(r.interval_hi)
       << "," << r.replications << "," << r.bootstrap_iterations << "\n";
  }
  return os.str();
}

enum class ResultFormat { json, csv };

inline ResultFormat format_from_string(const std::string& s) {
  if (s == "json") return ResultFormat::json;
  if (s == "csv") return ResultFormat::csv;
  throw std::invalid_argument("unknown format: " + s);
}

/// Writes a test result; JSON round-trips losslessly via
/// test_result_from_json.
inline void write_result(const TestResult& result, const std::filesystem::path& path,
                         ResultFormat format) {
  if (format == ResultFormat::json) {
    detail::write_text_file(path, to_json(result).dump(2) + "\n");
  } else {
    detail::write_text_file(path, test_result_to_csv(result));
  }
}

inline TestResult read_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return test_result_from_json(j);
}

inline void write_rejection_table(const RejectionTable& table, const std::filesystem::path& path,
                                  ResultFormat format) {
  if (format == ResultFormat::json) {
    detail::write_text_file(path, to_json(table).dump(2) + "\n");
  } else {
    detail::write_text_file(path, rejection_table_to_csv(table));
  }
}

}  // namespace aroc
