#include <doctest.h>

#include <random>

#include "oml/config.hpp"
#include "oml/error.hpp"

using namespace oml;

TEST_CASE("config parses keys, comments and blank lines") {
  const auto c = Config::parse_string(
      "# header\n\nexp.id = weak_modular, a1\nmeasure.kind=cantor\n  measure.levels =  8  \nyoung.B = linlog:k=1\n");
  CHECK(c.get_string("measure.kind", "") == "cantor");
  CHECK(c.get_int("measure.levels", 0) == 8);
  CHECK(c.get_string("young.B", "") == "linlog:k=1");
  CHECK(c.experiments() == std::vector<std::string>{"weak_modular", "a1"});
  CHECK(c.get_real("missing", 2.5) == 2.5);
  CHECK(c.seed() == 1);
  CHECK(c.jobs() == 1);
}

TEST_CASE("config parse errors carry line and column") {
  auto expect_at = [](const char* text, int line, int col) {
    try {
      Config::parse_string(text);
      FAIL("no ParseError for " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == col);
    }
  };
  expect_at("a=1\nnot a pair\n", 2, 1);
  expect_at("a=1\nb c=2\n", 2, 2);
  expect_at("a=\n", 1, 3);
  expect_at("a=1\n# c\na=2\n", 3, 1);
}

TEST_CASE("config round trip") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> len(1, 8);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789_.-";
  const std::string values = "abc xyz:=,+-0123456789()";
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    for (int i = 0; i < 12; ++i) {
      std::string key = "k" + std::to_string(i) + ".";
      for (int j = len(rng); j > 0; --j) key += alphabet[rng() % alphabet.size()];
      key += 'x';
      std::string value = "v";
      for (int j = len(rng); j > 0; --j) value += values[rng() % values.size()];
      text += key + " = " + value + "\n";
    }
    const auto a = Config::parse_string(text);
    const auto b = Config::parse_string(a.serialize());
    CHECK(a == b);
    CHECK(a.serialize() == b.serialize());
  }
}

TEST_CASE("overrides replace values or adjust numbers") {
  auto c = Config::parse_string("family.k_max = 6\nseed = 5\n");
  c.apply_override("family.k_max=+1");
  CHECK(c.get_int("family.k_max", 0) == 7);
  c.apply_override("family.k_min=+2");
  CHECK(c.get_int("family.k_min", 1) == 3);
  c.apply_override("measure.kind=cantor");
  CHECK(c.get_string("measure.kind", "") == "cantor");
  c.apply_override("family.k_max=9");
  CHECK(c.get_int("family.k_max", 0) == 9);
  CHECK_THROWS_AS(c.apply_override("novalue"), ParseError);
  CHECK_THROWS_AS(c.apply_override("x=+abc"), ParseError);
  c.apply_override("frac=+0.5");
  CHECK_THROWS_AS(c.get_int("frac", 1), ConfigError);
}

TEST_CASE("seed and jobs validation") {
  CHECK(Config::parse_string("seed=18446744073709551615").seed() == 18446744073709551615ull);
  CHECK_THROWS_AS(Config::parse_string("seed=18446744073709551616").seed(), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("seed=-3").seed(), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("jobs=0").jobs(), ConfigError);
}

TEST_CASE("experiment scoped keys shadow globals") {
  const auto c = Config::parse_string("p = 2\na1.p = 3\nseed = 11\n");
  const ExperimentConfig a1(c, "a1");
  const ExperimentConfig other(c, "weak_modular");
  CHECK(a1.get_real("p", 0.0) == 3.0);
  CHECK(other.get_real("p", 0.0) == 2.0);
  CHECK(a1.seed() != other.seed());
  CHECK(a1.seed() == ExperimentConfig(c, "a1").seed());
  CHECK_FALSE(a1.find_string("q").has_value());
}
