#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace oml {

struct Sample {
  std::string case_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// lhs / rhs; 0 when both vanish, +inf when only rhs does.
double sample_ratio(double lhs, double rhs);

struct ExperimentReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Sample> samples;
  double empirical_C = 0.0;
  double refinement_drift = 0.0;
  std::string criterion;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> diagnostics;

  void add_sample(std::string case_id, double lhs, double rhs);
  void param(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }
  void param(std::string key, double value);
  void diag(std::string key, std::string value) { diagnostics.emplace_back(std::move(key), std::move(value)); }
  void diag(std::string key, double value);
  // Max of the sample ratios.
  double max_ratio() const;
};

// Minimal RFC 4180 quoting.
std::string csv_field(const std::string& s);
std::vector<std::string> parse_csv_line(const std::string& line);

void write_report_csv(std::ostream& os, const ExperimentReport& r);
void write_summary_csv(std::ostream& os, const ExperimentReport& r);
void write_plot_csv(std::ostream& os, const ExperimentReport& r);
// <id>_report.csv, <id>_summary.csv and <id>_plot.csv under dir.
void write_report_files(const std::filesystem::path& dir, const ExperimentReport& r);

inline const std::vector<std::string> kSummaryColumns = {
    "experiment", "empirical_C", "refinement_drift", "verdict", "criterion", "samples", "parameters", "diagnostics"};

struct SummaryRow {
  std::string run;  // directory of the summary relative to the scanned root
  std::string experiment;
  double empirical_C = 0.0;
  double refinement_drift = 0.0;
  std::string verdict;
  std::string criterion;
};

// Reads every *_summary.csv below root (sorted by path). Throws SchemaError
// when a file lacks a required column and ConfigError when none exist.
std::vector<SummaryRow> collect_summaries(const std::filesystem::path& root);

// Merged CSV with a cross-run drift column, plus an aligned text table.
void write_consolidated(std::ostream& csv, std::ostream& table, const std::vector<SummaryRow>& rows);

}  // namespace oml
