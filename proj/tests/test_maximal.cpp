#include <doctest.h>

#include <cmath>
#include <random>

#include "oml/error.hpp"
#include "oml/luxemburg.hpp"
#include "oml/maximal.hpp"

using namespace oml;

namespace {

Cube cube1(double a, double l) { return Cube(Eigen::VectorXd::Constant(1, a), l); }

MuFunction noise(const AtomicMeasure& mu, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return MuFunction::sample(mu, [&](const auto&) { return u(rng) < 0.5 ? 0.0 : std::exp(2.0 * u(rng)); });
}

// Direct evaluation over an explicit cube list.
double brute(const MuFunction& f, const std::vector<Cube>& cubes, Eigen::Index atom,
             const std::function<double(const Cube&)>& value) {
  double best = -1.0;
  for (const auto& Q : cubes)
    if (Q.contains(f.measure().point(atom))) best = std::max(best, value(Q));
  return best;
}

}  // namespace

TEST_CASE("default family and cells") {
  const auto leb = build_lebesgue(1, cube1(0.0, 1.0), 0x1p-6);
  const auto fam = default_family(leb);
  CHECK(fam.k_min == 0);
  CHECK(fam.k_max == 6);
  CHECK(fam.shifts_per_axis == 3);
  int cells = 0;
  for_each_cell(leb, fam, [&](const FamilyCell& c) {
    ++cells;
    CHECK(c.mass() == doctest::Approx(mu_of(leb, c.cube())).epsilon(1e-12));
    CHECK(c.dilated_mass(2) == doctest::Approx(mu_of(leb, dilate(c.cube(), 5.0))).epsilon(1e-12));
  });
  CHECK(cells > 0);
  CubeFamilySpec bad{3, 2, 1, leb.bounding_box()};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("M_{alpha,B} examples") {
  const auto leb = build_lebesgue(1, cube1(0.0, 1.0), 0x1p-6);
  CubeFamilySpec fam{-2, 6, 3, cube1(-2.0, 4.0)};
  const auto zero = m_alpha_B(MuFunction::constant(leb, 0.0), 0.3, linear_log(1.0), fam);
  CHECK(zero.values.values().isZero());

  const auto one = MuFunction::indicator(leb, cube1(0.0, 1.0));
  const auto field = m_alpha_B(one, 0.0, power(1.0), fam);
  for (Eigen::Index i = 0; i < leb.size(); ++i) CHECK(field.values[i] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(field.tag == OperatorTag::MB);

  CHECK_THROWS_AS(m_alpha_B(one, 1.0, power(1.0), fam), DomainError);
  CubeFamilySpec narrow{1, 6, 1, cube1(0.0, 0.5)};
  CHECK_THROWS_AS(m_alpha_B(one, 0.0, power(1.0), narrow), CoverageError);
}

TEST_CASE("radial operator coincides with the Power{1} Orlicz operator") {
  const auto c = build_cantor(6);
  std::mt19937_64 rng(11);
  const auto f = noise(c, rng);
  const auto fam = default_family(c);
  for (double alpha : {0.0, 0.3}) {
    const auto a = m_radial_alpha(f, alpha, fam);
    const auto b = m_alpha_B(f, alpha, power(1.0), fam);
    CHECK(a.values.values() == b.values.values());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const auto& Q = a.argmax[static_cast<size_t>(i)];
      const double l = Q.side();
      const double lhs = std::pow(l, alpha) * (integrate(abs(f), Q) / std::pow(l, c.ahlfors_n()));
      const double rhs = integrate(abs(f), Q) / std::pow(l, c.ahlfors_n() - alpha);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      CHECK(a.values[i] == doctest::Approx(lhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("fields agree with brute force over the family cubes") {
  const auto leb = build_lebesgue(2, Cube(Eigen::VectorXd::Zero(2), 1.0), 0x1p-3);
  std::mt19937_64 rng(12);
  const auto f = noise(leb, rng);
  const auto fam = default_family(leb, 2);
  const auto cubes = family_cubes(leb, fam);
  const auto B = linear_log(1.0);
  const auto mb = m_alpha_B(f, 0.5, B, fam);
  const auto mm = m_mu(f, fam);
  const auto mw = m_wtl_alpha(f, 0.25, fam);
  for (Eigen::Index i = 0; i < leb.size(); i += 7) {
    CHECK(mb.values[i] == doctest::Approx(brute(f, cubes, i, [&](const Cube& Q) {
                                              return std::pow(Q.side(), 0.5) * luxemburg_norm(f, B, Q);
                                            })).epsilon(1e-12));
    CHECK(mm.values[i] == doctest::Approx(brute(f, cubes, i, [&](const Cube& Q) {
                                              return integrate(abs(f), Q) / mu_of(leb, Q);
                                            })).epsilon(1e-12));
    CHECK(mw.values[i] == doctest::Approx(brute(f, cubes, i, [&](const Cube& Q) {
                                              return std::pow(mu_of(leb, dilate(Q, 5.0)), -0.75) *
                                                     integrate(abs(f), Q);
                                            })).epsilon(1e-12));
  }
}

TEST_CASE("M_mu and WTL closed cases") {
  const auto leb = build_lebesgue(1, cube1(0.0, 4.0), 0x1p-4);
  const auto fam = default_family(leb);
  const auto mc = m_mu(MuFunction::constant(leb, 2.5), fam);
  for (Eigen::Index i = 0; i < leb.size(); ++i) CHECK(mc.values[i] == doctest::Approx(2.5).epsilon(1e-12));

  const auto w = m_wtl_alpha(MuFunction::constant(leb, 1.0), 0.0, CubeFamilySpec{1, 1, 1, leb.bounding_box()});
  // interior cells of side 1/2: mu(Q)/mu(5Q) = 1/5
  const Eigen::Index mid = leb.size() / 2;
  CHECK(w.values[mid] == doctest::Approx(0.2).epsilon(1e-12));

  const auto unit = build_lebesgue(1, cube1(1.0, 1.0), 0x1p-4);
  const auto Q = cube1(1.0, 1.0);
  const auto single = m_wtl_alpha(MuFunction::constant(unit, 3.0), 0.5, CubeFamilySpec{0, 0, 1, Q});
  for (Eigen::Index i = 0; i < unit.size(); ++i)
    CHECK(single.values[i] ==
          doctest::Approx(std::pow(mu_of(unit, dilate(Q, 5.0)), -0.5) * 3.0 * mu_of(unit, Q)).epsilon(1e-12));
}

TEST_CASE("Gaussian differentiation contrast") {
  const auto g = build_gaussian_1d(cube1(-4.0, 8.0), 0x1p-10);
  const auto f = MuFunction::sample(g, [](const auto& x) { return std::exp(2.0 * x[0] * x[0]); });
  const auto Q = cube1(1.0 - 0x1p-8, 0x1p-7);
  const double mu_avg = integrate(f, Q) / mu_of(g, Q);
  CHECK(mu_avg == doctest::Approx(std::exp(2.0)).epsilon(1e-2));
  CHECK(radial_average(f, Q) == doctest::Approx(std::exp(1.0)).epsilon(1e-2));
}

TEST_CASE("sublinearity, homogeneity and refinement monotonicity") {
  const auto c = build_cantor(6);
  std::mt19937_64 rng(13);
  const auto f = noise(c, rng);
  const auto g = noise(c, rng);
  const auto B = power_log(1.5, 1.0);
  const auto fam = default_family(c);
  const auto fg = m_alpha_B(f + g, 0.2, B, fam);
  const auto ff = m_alpha_B(f, 0.2, B, fam);
  const auto gg = m_alpha_B(g, 0.2, B, fam);
  const auto f3 = m_alpha_B(-3.0 * f, 0.2, B, fam);
  const auto rf = m_radial_alpha(f, 0.2, fam);
  const auto rg = m_radial_alpha(g, 0.2, fam);
  const auto rfg = m_radial_alpha(f + g, 0.2, fam);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    CHECK(fg.values[i] <= (ff.values[i] + gg.values[i]) * (1.0 + 2e-9));
    CHECK(f3.values[i] == doctest::Approx(3.0 * ff.values[i]).epsilon(2e-9));
    CHECK(rfg.values[i] <= (rf.values[i] + rg.values[i]) * (1.0 + 1e-12));
  }

  CubeFamilySpec a{0, 6, 1, c.bounding_box()};
  CubeFamilySpec b{-1, 8, 2, c.bounding_box()};
  CubeFamilySpec d{-2, 10, 4, c.bounding_box()};
  const auto va = m_alpha_B(f, 0.2, B, a).values;
  const auto vb = m_alpha_B(f, 0.2, B, b).values;
  const auto vd = m_alpha_B(f, 0.2, B, d).values;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    CHECK(va[i] <= vb[i]);
    CHECK(vb[i] <= vd[i]);
  }
}
