#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oml {

// Flat "key=value" text with dotted keys, '#' comments and blank lines.
// Values are kept verbatim (trimmed). Keys are unique.
class Config {
 public:
  Config() = default;

  static Config parse(std::istream& in);
  static Config parse_string(std::string_view text);
  static Config load(const std::string& path);

  // One "key=value" line per entry in key order; parse(serialize()) == *this
  // when no relative adjustments are pending.
  std::string serialize() const;

  // "key=value"; a value starting with '+' is a relative adjustment of a
  // numeric entry (applied on top of its explicit or default value).
  void apply_override(std::string_view assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> raw(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const noexcept { return values_; }
  const std::map<std::string, double>& adjustments() const noexcept { return deltas_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_real(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::optional<double> find_real(const std::string& key) const;

  // Experiment ids listed under exp.id (comma separated).
  std::vector<std::string> experiments() const;
  std::uint64_t seed() const;
  int jobs() const;

  friend bool operator==(const Config&, const Config&) = default;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, double> deltas_;
};

// Config as seen by one experiment: "<id>.key" shadows "key".
class ExperimentConfig {
 public:
  ExperimentConfig(const Config& base, std::string id) : base_(&base), id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }
  const Config& base() const noexcept { return *base_; }

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_real(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::optional<double> find_real(const std::string& key) const;
  std::optional<std::string> find_string(const std::string& key) const;
  // Seed mixed with the experiment id.
  std::uint64_t seed() const;

 private:
  std::string resolve(const std::string& key) const;
  const Config* base_;
  std::string id_;
};

}  // namespace oml
