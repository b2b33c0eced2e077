#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polyproj {

/// One output row. Fields that do not apply to a command are left empty
/// (blank in CSV, null in JSON).
struct ReportRow {
  std::string model;
  std::string family;
  std::optional<int> n;
  int d = 0;
  int k = 0;
  std::optional<double> t;
  std::optional<double> b;
  double value = 0.0;
  double stderr_ = 0.0;
  std::string method;
  std::optional<double> reference;
  std::optional<double> z_score;
  std::optional<double> t_functional;
  std::optional<bool> strict_increase;
  double wall_time = 0.0;

  bool operator==(const ReportRow&) const = default;
};

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(std::string_view name);

/// Column order of the CSV header and JSON keys.
const std::vector<std::string>& report_columns();

void write_report(std::ostream& out, const std::vector<ReportRow>& rows, ReportFormat fmt);
std::vector<ReportRow> read_report(std::istream& in, ReportFormat fmt);

}  // namespace polyproj
