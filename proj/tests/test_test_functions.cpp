#include <doctest.h>

#include <cmath>

#include "oml/error.hpp"
#include "oml/test_functions.hpp"

using namespace oml;

namespace {

const Cube kUnit(Eigen::VectorXd::Zero(1), 1.0);

}  // namespace

TEST_CASE("test functions are tagged and cycle through kinds") {
  TestFunctionSpec spec;
  spec.count = 7;
  spec.kinds = {"indicator", "sum", "noise", "exp"};
  const auto fns = make_test_functions(kUnit, spec, 42);
  REQUIRE(fns.size() == 7);
  CHECK(fns[0].tag == "indicator-0");
  CHECK(fns[1].tag == "sum-1");
  CHECK(fns[2].tag == "noise-2");
  CHECK(fns[3].tag == "exp-3");
  CHECK(fns[4].tag == "indicator-4");
}

TEST_CASE("test function values") {
  const auto mu = build_lebesgue(1, kUnit, 0x1p-8);
  TestFunctionSpec spec;
  spec.count = 4;
  spec.kinds = {"indicator", "sum", "noise", "exp"};
  spec.theta = 1.5;
  const auto fns = make_test_functions(kUnit, spec, 7);

  const auto ind = fns[0].on(mu);
  double ones = 0.0;
  for (Eigen::Index i = 0; i < ind.size(); ++i) {
    CHECK((ind[i] == 0.0 || ind[i] == 1.0));
    ones += ind[i];
  }
  CHECK(ones >= 1.0);
  CHECK(ones <= 0.5 * 256 + 1);

  const auto sum = fns[1].on(mu);
  CHECK(sum.values().maxCoeff() <= 3 * 4.0);
  CHECK(sum.values().minCoeff() >= 0.0);

  const auto noise = fns[2].on(mu);
  int zeros = 0;
  for (Eigen::Index i = 0; i < noise.size(); ++i) {
    if (noise[i] == 0.0) ++zeros;
    else CHECK((noise[i] >= std::exp(-2.0) && noise[i] <= std::exp(2.0)));
    if (i % 16 != 0) CHECK(noise[i] == noise[i - 1]);
  }
  CHECK(zeros % 16 == 0);

  const auto ex = fns[3].on(mu);
  const auto& x = mu.point(100);
  CHECK(ex[100] == doctest::Approx(std::exp(1.5 * x.squaredNorm())).epsilon(1e-15));
}

TEST_CASE("same seed gives identical functions, refinement sees the same function") {
  TestFunctionSpec spec;
  const auto a = make_test_functions(kUnit, spec, 123);
  const auto b = make_test_functions(kUnit, spec, 123);
  const auto c = make_test_functions(kUnit, spec, 124);
  const auto coarse = build_lebesgue(1, kUnit, 0x1p-6);
  const auto fine = build_lebesgue(1, kUnit, 0x1p-7);
  bool differs = false;
  for (size_t k = 0; k < a.size(); ++k) {
    const auto fa = a[k].on(coarse);
    const auto fb = b[k].on(coarse);
    CHECK((fa.values().array() == fb.values().array()).all());
    differs = differs || !(fa.values().array() == c[k].on(coarse).values().array()).all();
    const auto ff = a[k].on(fine);
    for (Eigen::Index i = 0; i < coarse.size(); ++i) {
      const auto& x = coarse.point(i);
      CHECK(a[k].eval(x) == fa[i]);
    }
    CHECK(ff.size() == 2 * fa.size());
  }
  CHECK(differs);
}

TEST_CASE("test function spec validation") {
  TestFunctionSpec spec;
  spec.count = 0;
  CHECK_THROWS_AS(make_test_functions(kUnit, spec, 1), ConfigError);
  spec.count = 2;
  spec.kinds = {"wavelet"};
  CHECK_THROWS_AS(make_test_functions(kUnit, spec, 1), ConfigError);
}
