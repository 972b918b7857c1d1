#include "oml/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "oml/error.hpp"
#include "oml/text.hpp"

namespace oml {

namespace {

bool key_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
         c == '-';
}

// Column (1-based) of the first invalid key character, 0 if the key is fine.
int bad_key_column(std::string_view key) {
  if (key.empty()) return 1;
  if (key.front() == '.' || key.back() == '.') return 1;
  for (size_t i = 0; i < key.size(); ++i)
    if (!key_char(key[i])) return static_cast<int>(i) + 1;
  return 0;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    const std::string_view body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto lead = static_cast<int>(line.find_first_not_of(" \t"));
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, lead + 1, "expected key=value");
    const std::string_view key = trim(body.substr(0, eq));
    const std::string_view value = trim(body.substr(eq + 1));
    if (int col = bad_key_column(key)) throw ParseError(line_no, lead + col, "invalid key '" + std::string(key) + "'");
    if (value.empty()) throw ParseError(line_no, lead + static_cast<int>(eq) + 2, "empty value for '" + std::string(key) + "'");
    std::string k(key);
    if (cfg.values_.count(k)) throw ParseError(line_no, lead + 1, "duplicate key '" + k + "'");
    cfg.values_.emplace(std::move(k), std::string(value));
  }
  return cfg;
}

Config Config::parse_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in);
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

void Config::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ParseError(1, 1, "override must be KEY=VALUE: '" + std::string(assignment) + "'");
  const std::string key(trim(assignment.substr(0, eq)));
  const std::string value(trim(assignment.substr(eq + 1)));
  if (int col = bad_key_column(key)) throw ParseError(1, col, "invalid override key '" + key + "'");
  if (value.empty()) throw ParseError(1, static_cast<int>(eq) + 2, "empty override value for '" + key + "'");
  if (value.front() == '+') {
    auto d = try_parse_real(std::string_view(value).substr(1));
    if (!d) throw ParseError(1, static_cast<int>(eq) + 2, "relative override must be numeric: '" + value + "'");
    deltas_[key] += *d;
    return;
  }
  values_[key] = value;
  deltas_.erase(key);
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::optional<std::string> Config::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto v = raw(key);
  return v ? *v : fallback;
}

std::optional<double> Config::find_real(const std::string& key) const {
  if (!raw(key)) return std::nullopt;
  return get_real(key, 0.0);
}

double Config::get_real(const std::string& key, double fallback) const {
  auto v = raw(key);
  double x = v ? parse_real(*v, key) : fallback;
  if (auto d = deltas_.find(key); d != deltas_.end()) x += d->second;
  return x;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  auto v = raw(key);
  long long x = v ? parse_integer(*v, key) : fallback;
  if (auto d = deltas_.find(key); d != deltas_.end()) {
    if (d->second != std::floor(d->second)) throw ConfigError("relative override of '" + key + "' must be an integer");
    x += static_cast<long long>(d->second);
  }
  return x;
}

std::vector<std::string> Config::experiments() const {
  std::vector<std::string> out;
  auto v = raw("exp.id");
  if (!v) return out;
  for (const auto& part : split(*v, ',')) {
    auto t = std::string(trim(part));
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::uint64_t Config::seed() const {
  auto v = raw("seed");
  if (!v) return 1;
  std::uint64_t s = 0;
  const std::string_view t = trim(*v);
  if (t.empty()) throw ConfigError("seed: empty value");
  for (char c : t) {
    if (c < '0' || c > '9') throw ConfigError("seed must be an unsigned integer, got '" + *v + "'");
    const auto digit = static_cast<std::uint64_t>(c - '0');
    if (s > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) throw ConfigError("seed exceeds 64 bits: '" + *v + "'");
    s = s * 10 + digit;
  }
  return s;
}

int Config::jobs() const {
  const auto j = get_int("jobs", 1);
  if (j < 1) throw ConfigError("jobs must be >= 1");
  return static_cast<int>(j);
}

std::string ExperimentConfig::resolve(const std::string& key) const {
  const std::string scoped = id_ + "." + key;
  if (base_->has(scoped) || base_->adjustments().count(scoped)) return scoped;
  return key;
}

bool ExperimentConfig::has(const std::string& key) const { return base_->has(resolve(key)); }

std::string ExperimentConfig::get_string(const std::string& key, const std::string& fallback) const {
  return base_->get_string(resolve(key), fallback);
}

double ExperimentConfig::get_real(const std::string& key, double fallback) const {
  return base_->get_real(resolve(key), fallback);
}

long long ExperimentConfig::get_int(const std::string& key, long long fallback) const {
  return base_->get_int(resolve(key), fallback);
}

std::optional<double> ExperimentConfig::find_real(const std::string& key) const {
  return base_->find_real(resolve(key));
}

std::optional<std::string> ExperimentConfig::find_string(const std::string& key) const {
  return base_->raw(resolve(key));
}

std::uint64_t ExperimentConfig::seed() const { return base_->seed() ^ fnv1a(id_); }

}  // namespace oml
