#include <cmath>

#include "common.hpp"
#include "oml/error.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

using namespace verify;

namespace {

struct NormSweep {
  double C = 0.0;
  std::vector<Sample> samples;
};

// ||M_{alpha,B} f||_q / ||f||_p over the test functions; q = inf takes the max atom.
NormSweep sweep(const ExperimentConfig& cfg, const Setup& s, const YoungFunction& B, double alpha, double p,
                double q) {
  const auto one = MuFunction::constant(s.mu, 1.0);
  NormSweep out;
  for (const auto& tf : test_functions(cfg, s.mu.bounding_box())) {
    const auto f = tf.on(s.mu);
    const double rhs = weighted_norm(f, p, one);
    if (rhs == 0.0) continue;
    const auto field = m_alpha_B(f, alpha, B, s.family);
    const double lhs = std::isinf(q) ? field.values.values().maxCoeff() : weighted_norm(field.values, q, one);
    out.samples.push_back({tf.tag, lhs, rhs, sample_ratio(lhs, rhs)});
    out.C = std::max(out.C, out.samples.back().ratio);
  }
  return out;
}

void require_phi_bound(const YoungFunction& phi, const YoungFunction& B, double a) {
  const GeometricGrid grid{0x1p-20, 0x1p20, 161};
  const auto bound = inverse_ratio([&](double t) { return inverse(phi, t) * std::pow(t, a); },
                                   [&](double t) { return inverse(B, t); }, grid);
  require(bound.min_ratio >= 0.125, "phi_inverse_bound",
          "phi^{-1}(t) t^{alpha/n} / B^{-1}(t) drops to " + format_sig12(bound.min_ratio) + " at t = " +
              format_sig12(bound.argmin_t));
}

void require_submultiplicative(const YoungFunction& B) {
  const auto sub = check_submultiplicative(B);
  require(sub.certified(), "check_submultiplicative",
          B.describe() + " has B(st)/(B(s)B(t)) = " + format_sig12(sub.worst_ratio) + " at s = " +
              format_sig12(sub.worst_s) + ", t = " + format_sig12(sub.worst_t));
}

}  // namespace

// path = maximal (alpha = 0) | fractional (1 < p < n/alpha) | endpoint (p = n/alpha)
ExperimentReport exp_lp_bounds(const ExperimentConfig& cfg) {
  const double a = cfg.get_real("alpha_over_n", 0.0);
  if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha_over_n must lie in [0, 1)");
  const std::string path = cfg.get_string("path", a == 0.0 ? "maximal" : "fractional");
  const double p = path == "endpoint" ? (a > 0.0 ? 1.0 / a : 0.0) : cfg.get_real("p", 2.0);
  const double k = cfg.get_real("k", 1.0);
  const auto B = young_param(cfg, "young.B", a == 0.0 ? "power:p=1.5" : "linlog:k=1");

  double q = p;
  if (path == "maximal") {
    if (a != 0.0) throw ConfigError("the maximal path needs alpha_over_n = 0");
    if (!(p > 1.0)) throw ConfigError("p must exceed 1");
    const auto v = check_bp(B, p);
    require(v.converges(), "check_bp", "B in B_p fails: " + v.diagnostic);
  } else if (path == "fractional" || path == "endpoint") {
    if (!(a > 0.0)) throw ConfigError("path '" + path + "' needs alpha_over_n > 0");
    const auto phi = cfg.has("young.phi") ? young_param(cfg, "young.phi", "") : power_log(1.0 / (1.0 - a), k);
    require_submultiplicative(B);
    if (path == "fractional") {
      if (!(p > 1.0 && p * a < 1.0)) throw ConfigError("the fractional path needs 1 < p < n/alpha");
      q = sobolev_exponent(p, a);
      const auto v = check_bp(power_scaled(B, q / p), q);
      require(v.converges(), "check_bp", "B^{q/p} in B_q fails: " + v.diagnostic);
    } else {
      q = std::numeric_limits<double>::infinity();
    }
    require_phi_bound(phi, B, a);
  } else {
    throw ConfigError("path must be 'maximal', 'fractional' or 'endpoint', got '" + path + "'");
  }

  const Setup s0 = build_setup(cfg, 0);
  const Setup s1 = build_setup(cfg, 1);
  const double alpha = a * s0.mu.ahlfors_n();
  auto w0 = sweep(cfg, s0, B, alpha, p, q);
  auto w1 = sweep(cfg, s1, B, alpha, p, q);

  ExperimentReport r;
  r.id = cfg.id();
  r.param("path", path);
  r.param("p", p);
  r.param("q", q);
  r.param("alpha", alpha);
  r.param("n", s0.mu.ahlfors_n());
  r.param("B", B.describe());
  r.param("measure", describe_measure(s0));
  r.samples = std::move(w0.samples);
  r.empirical_C = r.max_ratio();
  r.diag("refined_C", w1.C);
  if (auto sweep_text = cfg.find_string("p_sweep")) {
    for (const auto& item : split(*sweep_text, ',')) {
      const auto ps = try_parse_real(trim(item));
      if (!ps || !(*ps >= 1.0)) throw ConfigError("p_sweep entries must be reals >= 1");
      const double qs = a == 0.0 ? *ps : sobolev_exponent(*ps, a);
      r.diag("C_at_p=" + format_sig12(*ps), sweep(cfg, s0, B, alpha, *ps, qs).C);
    }
  }
  judge_bounded(r, r.empirical_C, w1.C, cfg.get_real("drift_max", kDefaultDriftMax));
  return r;
}

}  // namespace oml
