#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oml {

// Accepts plain decimals, "a/b" fractions and "2^k" powers. nullopt on failure.
std::optional<double> try_parse_real(std::string_view text);
// Throws ConfigError mentioning `what`.
double parse_real(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);

// Shortest representation that round-trips.
std::string format_real(double x);
// 12 significant digits, as written into CSV reports.
std::string format_sig12(double x);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace oml
