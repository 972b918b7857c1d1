#include "oml/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "oml/error.hpp"
#include "oml/text.hpp"

namespace oml {

double sample_ratio(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

void ExperimentReport::add_sample(std::string case_id, double lhs, double rhs) {
  samples.push_back({std::move(case_id), lhs, rhs, sample_ratio(lhs, rhs)});
}

void ExperimentReport::param(std::string key, double value) { param(std::move(key), format_real(value)); }
void ExperimentReport::diag(std::string key, double value) { diag(std::move(key), format_sig12(value)); }

double ExperimentReport::max_ratio() const {
  double c = 0.0;
  for (const auto& s : samples) c = std::max(c, s.ratio);
  return c;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

namespace {

std::string joined(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

void write_report_csv(std::ostream& os, const ExperimentReport& r) {
  os << "case,lhs,rhs,ratio\n";
  for (const auto& s : r.samples)
    os << csv_field(s.case_id) << ',' << format_sig12(s.lhs) << ',' << format_sig12(s.rhs) << ','
       << format_sig12(s.ratio) << '\n';
}

void write_summary_csv(std::ostream& os, const ExperimentReport& r) {
  for (size_t i = 0; i < kSummaryColumns.size(); ++i) os << (i ? "," : "") << kSummaryColumns[i];
  os << '\n';
  os << csv_field(r.id) << ',' << format_sig12(r.empirical_C) << ',' << format_sig12(r.refinement_drift) << ','
     << (r.passed ? "pass" : "fail") << ',' << csv_field(r.criterion) << ',' << r.samples.size() << ','
     << csv_field(joined(r.parameters)) << ',' << csv_field(joined(r.diagnostics)) << '\n';
}

void write_plot_csv(std::ostream& os, const ExperimentReport& r) {
  os << "lhs,rhs\n";
  for (const auto& s : r.samples) os << format_sig12(s.lhs) << ',' << format_sig12(s.rhs) << '\n';
}

void write_report_files(const std::filesystem::path& dir, const ExperimentReport& r) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& suffix) {
    std::ofstream os(dir / (r.id + suffix), std::ios::binary);
    if (!os) throw ConfigError("cannot write " + (dir / (r.id + suffix)).string());
    return os;
  };
  {
    auto os = open("_report.csv");
    write_report_csv(os, r);
  }
  {
    auto os = open("_summary.csv");
    write_summary_csv(os, r);
  }
  {
    auto os = open("_plot.csv");
    write_plot_csv(os, r);
  }
}

std::vector<SummaryRow> collect_summaries(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw ConfigError("not a directory: " + root.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > 12 && name.ends_with("_summary.csv")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no *_summary.csv files under " + root.string());

  std::vector<SummaryRow> rows;
  for (const auto& file : files) {
    std::ifstream in(file);
    std::string line;
    if (!std::getline(in, line)) throw SchemaError(file.string() + ": empty summary");
    const auto header = parse_csv_line(line);
    std::map<std::string, size_t> col;
    for (size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const auto& need : kSummaryColumns)
      if (!col.count(need)) throw SchemaError(file.string() + ": missing column '" + need + "'");
    auto rel = fs::relative(file.parent_path(), root).generic_string();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = parse_csv_line(line);
      if (f.size() != header.size()) throw SchemaError(file.string() + ": row width differs from header");
      SummaryRow r;
      r.run = rel;
      r.experiment = f[col["experiment"]];
      auto c = try_parse_real(f[col["empirical_C"]]);
      auto d = try_parse_real(f[col["refinement_drift"]]);
      r.empirical_C = c ? *c : std::nan("");
      r.refinement_drift = d ? *d : std::nan("");
      r.verdict = f[col["verdict"]];
      r.criterion = f[col["criterion"]];
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

void write_consolidated(std::ostream& csv, std::ostream& table, const std::vector<SummaryRow>& rows) {
  std::map<std::string, double> first;
  std::vector<std::vector<std::string>> cells;
  const std::vector<std::string> header{"run", "experiment", "empirical_C", "refinement_drift", "verdict",
                                        "cross_run_drift"};
  cells.push_back(header);
  for (const auto& r : rows) {
    std::string cross;
    auto it = first.find(r.experiment);
    if (it == first.end())
      first.emplace(r.experiment, r.empirical_C);
    else
      cross = format_sig12(it->second == 0.0 ? std::abs(r.empirical_C)
                                             : std::abs(r.empirical_C - it->second) / std::abs(it->second));
    cells.push_back({r.run, r.experiment, format_sig12(r.empirical_C), format_sig12(r.refinement_drift), r.verdict,
                     cross});
  }
  for (const auto& row : cells) {
    for (size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << csv_field(row[i]);
    csv << '\n';
  }
  std::vector<size_t> width(header.size(), 0);
  for (const auto& row : cells)
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (const auto& row : cells) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    table << line << '\n';
  }
}

}  // namespace oml
