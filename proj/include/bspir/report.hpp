#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bspir/experiment.hpp"

namespace bspir {

enum class ReportFormat { Csv, Json };

ReportFormat parse_format(const std::string& s);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The CSV header, one column per field of ReportRow.
extern const char* const kCsvHeader;

/// One flat CSV record. Undefined rates (zero trials) are empty cells.
struct ReportRow {
  std::string model;
  std::uint64_t N = 0, T = 0, B = 0, E = 0, K = 0, l = 0, q = 0, alpha = 0, beta = 0;
  std::string strategy;
  std::uint64_t trials = 0, errors = 0;
  std::optional<double> err_rate, err_ucb99;
  double analytic_bound = 0, rate = 0, rate_capacity = 0, rho = 0, rho_threshold = 0, seconds = 0;

  bool operator==(const ReportRow&) const = default;
};

ReportRow to_row(const ExperimentReport& r);

std::string emit_csv(const std::vector<ExperimentReport>& reports);
std::string emit_csv_rows(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_csv(const std::string& text);

nlohmann::json report_json(const ExperimentReport& r);
/// Inverse of report_json.
ExperimentReport report_from_json(const nlohmann::json& j);

/// CSV: header plus one row. JSON: a single object, pretty-printed.
std::string emit_report(const ExperimentReport& r, ReportFormat format);

/// Writes `bytes` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& bytes);

}  // namespace bspir
