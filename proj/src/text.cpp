#include "oml/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "oml/error.hpp"

namespace oml {

namespace {

std::optional<double> plain_real(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<double> try_parse_real(std::string_view text) {
  text = trim(text);
  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    auto base = plain_real(trim(text.substr(0, caret)));
    auto exponent = plain_real(trim(text.substr(caret + 1)));
    if (!base || !exponent) return std::nullopt;
    return std::pow(*base, *exponent);
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = plain_real(trim(text.substr(0, slash)));
    auto den = plain_real(trim(text.substr(slash + 1)));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }
  return plain_real(text);
}

double parse_real(std::string_view text, std::string_view what) {
  auto v = try_parse_real(text);
  if (!v) throw ConfigError("expected a number for " + std::string(what) + ", got '" + std::string(text) + "'");
  return *v;
}

long long parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("expected an integer for " + std::string(what) + ", got '" + std::string(text) + "'");
  return value;
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace oml
