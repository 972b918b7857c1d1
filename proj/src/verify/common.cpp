#include "common.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "oml/error.hpp"
#include "oml/luxemburg.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml::verify {

namespace {

Cube scaled_about_centre(const Cube& box, double scale) { return dilate(box, scale); }

Cube default_box(const std::string& kind, int d) {
  if (kind == "gaussian") return Cube(Eigen::VectorXd::Constant(1, -8.0), 16.0);
  return Cube(Eigen::VectorXd::Zero(d), 1.0);
}

}  // namespace

Setup build_setup(const ExperimentConfig& cfg, int level) {
  const std::string kind = cfg.get_string("measure.kind", "lebesgue");
  const double box_scale = cfg.get_real("refine.box_scale", 1.0);
  if (!(box_scale >= 1.0)) throw ConfigError("refine.box_scale must be >= 1");
  const int shifts = static_cast<int>(cfg.get_int("family.shifts", 3));

  auto box_for = [&](int d) {
    auto text = cfg.find_string("measure.box");
    Cube box = text ? parse_cube(*text) : default_box(kind, d);
    if (box.dim() != d) throw ConfigError("measure.box has dimension " + std::to_string(box.dim()) + ", expected " + std::to_string(d));
    return box;
  };

  auto build = [&](int lv) -> AtomicMeasure {
    if (kind == "lebesgue") {
      const int d = static_cast<int>(cfg.get_int("measure.d", 1));
      if (d < 1 || d > 3) throw ConfigError("measure.d must be 1, 2 or 3");
      Cube box = box_for(d);
      if (lv > 0 && box_scale != 1.0) box = scaled_about_centre(box, std::pow(box_scale, lv));
      return build_lebesgue(d, box, std::ldexp(cfg.get_real("measure.resolution", 0x1p-8), -lv));
    }
    if (kind == "gaussian") {
      Cube box = box_for(1);
      if (lv > 0 && box_scale != 1.0) box = scaled_about_centre(box, std::pow(box_scale, lv));
      return build_gaussian_1d(box, std::ldexp(cfg.get_real("measure.resolution", 0x1p-8), -lv));
    }
    if (kind == "cantor") return build_cantor(static_cast<int>(cfg.get_int("measure.levels", 8)) + lv);
    throw ConfigError("unknown measure.kind '" + kind + "'");
  };

  const AtomicMeasure base = build(0);
  const CubeFamilySpec def = default_family(base, shifts);
  const int k_min = static_cast<int>(cfg.get_int("family.k_min", def.k_min));
  const int k_max = static_cast<int>(cfg.get_int("family.k_max", def.k_max));

  AtomicMeasure mu = level == 0 ? base : build(level);
  Cube clip = mu.bounding_box();
  if (auto text = cfg.find_string("family.clip")) clip = parse_cube(*text);
  CubeFamilySpec family{k_min, k_max + level, shifts, clip};
  family.validate();
  return Setup{std::move(mu), std::move(family), kind};
}

std::vector<TestFunction> test_functions(const ExperimentConfig& cfg, const Cube& box) {
  TestFunctionSpec spec;
  spec.count = static_cast<int>(cfg.get_int("functions.count", spec.count));
  if (auto kinds = cfg.find_string("functions.kinds")) {
    spec.kinds.clear();
    for (const auto& k : split(*kinds, ',')) spec.kinds.emplace_back(trim(k));
  }
  spec.theta = cfg.get_real("functions.theta", spec.theta);
  return make_test_functions(box, spec, cfg.seed());
}

YoungFunction young_param(const ExperimentConfig& cfg, const std::string& key, const std::string& fallback) {
  return parse_young(cfg.get_string(key, fallback));
}

double relative_change(double c0, double c1) {
  if (c0 == c1) return 0.0;
  if (c0 == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(c1 - c0) / std::abs(c0);
}

bool expect_bounded(const ExperimentConfig& cfg, const std::string& kind) {
  const std::string e = cfg.get_string("expect", kind == "lebesgue" ? "bounded" : "unbounded");
  if (e == "bounded") return true;
  if (e == "unbounded") return false;
  throw ConfigError("expect must be 'bounded' or 'unbounded', got '" + e + "'");
}

void judge_bounded(ExperimentReport& r, double c0, double c1, double drift_max) {
  r.refinement_drift = relative_change(c0, c1);
  r.criterion = "empirical_C finite and refinement_drift <= " + format_real(drift_max);
  r.passed = std::isfinite(r.empirical_C) && std::isfinite(c1) && r.refinement_drift <= drift_max;
}

void judge_unbounded(ExperimentReport& r, double c0, double c1, double growth_min) {
  r.refinement_drift = relative_change(c0, c1);
  r.criterion = "refined sup exceeds base sup by more than " + format_real(growth_min);
  r.passed = c1 > (1.0 + growth_min) * c0;
}

void require(bool ok, const std::string& check, const std::string& detail) {
  if (!ok) throw HypothesisError(check, detail);
}

double weighted_norm(const MuFunction& g, double q, const MuFunction& w) { return lp_norm(g, q, &w); }

double sobolev_exponent(double p, double a) {
  const double inv = 1.0 / p - a;
  if (!(inv > 0.0)) throw ConfigError("1/p - alpha/n must be positive (p = " + format_real(p) + ")");
  return 1.0 / inv;
}

std::string describe_measure(const Setup& s) {
  return s.kind + "(d=" + std::to_string(s.mu.dim()) + ",atoms=" + std::to_string(s.mu.size()) +
         ",n=" + format_sig12(s.mu.ahlfors_n()) + ")";
}

MuFunction bounded_density(const AtomicMeasure& mu) {
  const Cube& box = mu.bounding_box();
  const Eigen::VectorXd c = box.center();
  const double L = box.side();
  return MuFunction::sample(mu, [&](const auto& x) {
    return 1.5 + 0.5 * std::cos(2.0 * std::numbers::pi * (x - c).norm() / L);
  });
}

Weights make_weights(const std::string& kind, const Setup& s, double p, double q) {
  if (kind == "unit") return {MuFunction::constant(s.mu, 1.0), MuFunction::constant(s.mu, 1.0)};
  if (kind == "mu_power") {
    auto u = bounded_density(s.mu);
    auto v = pow(m_mu(u, s.family).values, p / q);
    return {std::move(u), std::move(v)};
  }
  throw ConfigError("weights must be 'unit' or 'mu_power', got '" + kind + "'");
}

std::vector<GenerationSup> condition_wtl_sups(const Setup& s, const Weights& w, const YoungFunction& Phi,
                                              double alpha, double p, double q, double n) {
  const auto vinv = pow(w.v, -1.0 / p);
  const auto& m = s.mu.masses();
  std::map<int, double> sup;
  std::vector<double> vals;
  std::vector<double> masses;
  for_each_cell(s.mu, s.family, [&](const FamilyCell& c) {
    vals.clear();
    masses.clear();
    for (auto i : c.atoms()) {
      vals.push_back(vinv[i]);
      masses.push_back(m[i]);
    }
    const double l = c.cube().side();
    const double norm = luxemburg_norm(vals, masses, std::pow(l, n), Phi);
    const double u3 = c.dilated_integral(w.u.values(), 1);
    const double e = std::pow(l, n * (1.0 - 1.0 / p)) * std::pow(c.mass(), alpha - 1.0) * std::pow(u3, 1.0 / q) * norm;
    auto [it, fresh] = sup.emplace(c.generation(), e);
    if (!fresh) it->second = std::max(it->second, e);
  });
  std::vector<GenerationSup> out;
  for (const auto& [k, v] : sup) out.push_back({k, v});
  return out;
}

}  // namespace oml::verify

namespace oml {

MaximalField sidecar_field(const ExperimentConfig& cfg) {
  const verify::Setup s = verify::build_setup(cfg, 0);
  const auto B = verify::young_param(cfg, "young.B", "linlog:k=1");
  const double a = cfg.get_real("alpha_over_n", 0.0);
  if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha_over_n must lie in [0, 1)");
  const auto fns = verify::test_functions(cfg, s.mu.bounding_box());
  return m_alpha_B(fns.front().on(s.mu), a * s.mu.ahlfors_n(), B, s.family);
}

}  // namespace oml
