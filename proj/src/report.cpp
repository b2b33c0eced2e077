#include "polyproj/report.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "polyproj/errors.hpp"
#include "polyproj/format.hpp"

namespace polyproj {

namespace {

using json = nlohmann::ordered_json;

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
  else if constexpr (std::is_same_v<T, double>) return format_double(*v);
  else return std::to_string(*v);
}

std::optional<double> opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

std::optional<bool> opt_bool(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "true") return true;
  if (s == "false") return false;
  throw InvalidArgument("bad boolean cell '" + s + "'");
}

template <class T>
json jopt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> from_jopt(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw InvalidArgument("unknown output format '" + std::string(name) + "'");
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "model", "family", "n", "d", "k", "t", "b", "value", "stderr", "method",
      "reference", "z_score", "t_functional", "strict_increase", "wall_time"};
  return cols;
}

void write_report(std::ostream& out, const std::vector<ReportRow>& rows, ReportFormat fmt) {
  const auto& cols = report_columns();
  if (fmt == ReportFormat::Csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : rows) {
      out << r.model << ',' << r.family << ',' << cell(r.n) << ',' << r.d << ',' << r.k << ','
          << cell(r.t) << ',' << cell(r.b) << ',' << format_double(r.value) << ','
          << format_double(r.stderr_) << ',' << r.method << ',' << cell(r.reference) << ','
          << cell(r.z_score) << ',' << cell(r.t_functional) << ',' << cell(r.strict_increase) << ','
          << format_double(r.wall_time) << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    json o = json::object();
    o["model"] = r.model;
    o["family"] = r.family;
    o["n"] = jopt(r.n);
    o["d"] = r.d;
    o["k"] = r.k;
    o["t"] = jopt(r.t);
    o["b"] = jopt(r.b);
    o["value"] = r.value;
    o["stderr"] = r.stderr_;
    o["method"] = r.method;
    o["reference"] = jopt(r.reference);
    o["z_score"] = jopt(r.z_score);
    o["t_functional"] = jopt(r.t_functional);
    o["strict_increase"] = jopt(r.strict_increase);
    o["wall_time"] = r.wall_time;
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

std::vector<ReportRow> read_report(std::istream& in, ReportFormat fmt) {
  std::vector<ReportRow> rows;
  if (fmt == ReportFormat::Csv) {
    std::string line;
    if (!std::getline(in, line)) return rows;
    const auto header = split_fields(line, ',');
    if (header != report_columns()) throw InvalidArgument("unexpected report header: " + line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split_fields(line, ',');
      if (f.size() != header.size()) throw InvalidArgument("report row has wrong field count: " + line);
      ReportRow r;
      r.model = f[0];
      r.family = f[1];
      if (!f[2].empty()) r.n = parse_int(f[2]);
      r.d = parse_int(f[3]);
      r.k = parse_int(f[4]);
      r.t = opt_double(f[5]);
      r.b = opt_double(f[6]);
      r.value = parse_double(f[7]);
      r.stderr_ = parse_double(f[8]);
      r.method = f[9];
      r.reference = opt_double(f[10]);
      r.z_score = opt_double(f[11]);
      r.t_functional = opt_double(f[12]);
      r.strict_increase = opt_bool(f[13]);
      r.wall_time = parse_double(f[14]);
      rows.push_back(std::move(r));
    }
    return rows;
  }
  const json arr = json::parse(in);
  for (const auto& o : arr) {
    ReportRow r;
    r.model = o.at("model").get<std::string>();
    r.family = o.at("family").get<std::string>();
    r.n = from_jopt<int>(o.at("n"));
    r.d = o.at("d").get<int>();
    r.k = o.at("k").get<int>();
    r.t = from_jopt<double>(o.at("t"));
    r.b = from_jopt<double>(o.at("b"));
    r.value = o.at("value").get<double>();
    r.stderr_ = o.at("stderr").get<double>();
    r.method = o.at("method").get<std::string>();
    r.reference = from_jopt<double>(o.at("reference"));
    r.z_score = from_jopt<double>(o.at("z_score"));
    r.t_functional = from_jopt<double>(o.at("t_functional"));
    r.strict_increase = from_jopt<bool>(o.at("strict_increase"));
    r.wall_time = o.at("wall_time").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace polyproj
