#include <cmath>

#include "common.hpp"
#include "oml/error.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

using namespace verify;

namespace {

struct PointwiseSweep {
  double C = 0.0;
  std::vector<Sample> samples;
};

PointwiseSweep sweep(const ExperimentConfig& cfg, const Setup& s, const YoungFunction& B, const YoungFunction& psi,
                     double a, double p, double s_exp) {
  const double n = s.mu.ahlfors_n();
  const double alpha = a * n;
  PointwiseSweep out;
  for (const auto& tf : test_functions(cfg, s.mu.bounding_box())) {
    const auto f = tf.on(s.mu);
    const double mass_p = integrate(pow(f, p));
    if (mass_p == 0.0) continue;
    const auto lhs_field = m_alpha_B(f, alpha, B, s.family);
    const auto core = m_alpha_B(pow(f, p / s_exp), 0.0, psi, s.family);
    const double tail = std::pow(mass_p, a);
    Sample best{tf.tag, 0.0, 0.0, -1.0};
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      const double lhs = lhs_field.values[i];
      const double rhs = std::pow(core.values[i], 1.0 - a) * tail;
      const double ratio = sample_ratio(lhs, rhs);
      if (ratio > best.ratio) best = {tf.tag + "/atom" + std::to_string(i), lhs, rhs, ratio};
    }
    out.C = std::max(out.C, best.ratio);
    out.samples.push_back(std::move(best));
  }
  return out;
}

}  // namespace

ExperimentReport exp_pointwise_control(const ExperimentConfig& cfg) {
  const double p = cfg.get_real("p", 2.0);
  const double a = cfg.get_real("alpha_over_n", 0.25);
  const double k = cfg.get_real("k", 1.0);
  if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha_over_n must lie in [0, 1)");
  if (!(p > 1.0 && p * a < 1.0)) throw ConfigError("pointwise_control needs 1 < p < n/alpha");
  const double q = sobolev_exponent(p, a);
  const double s_exp = 1.0 + q / conjugate_exponent(p);
  const double s_alt = q * (1.0 - a);
  const double identity_error = std::abs(s_exp - s_alt) / s_exp;
  require(identity_error <= 1e-12, "exponent_identity",
          "1 + q/p' = " + format_sig12(s_exp) + " but q(1 - alpha/n) = " + format_sig12(s_alt));

  const auto B = young_param(cfg, "young.B", "linlog:k=1");
  const auto phi = cfg.has("young.phi") ? young_param(cfg, "young.phi", "") : power_log(1.0 / (1.0 - a), k);
  const auto psi = psi_from(phi, a);

  const GeometricGrid grid{0x1p-20, 0x1p20, 161};
  const auto bound = inverse_ratio([&](double t) { return inverse(phi, t) * std::pow(t, a); },
                                   [&](double t) { return inverse(B, t); }, grid);
  require(bound.min_ratio >= 0.125, "phi_inverse_bound",
          "phi^{-1}(t) t^{alpha/n} / B^{-1}(t) drops to " + format_sig12(bound.min_ratio) + " at t = " +
              format_sig12(bound.argmin_t));

  const Setup s0 = build_setup(cfg, 0);
  const Setup s1 = build_setup(cfg, 1);
  auto w0 = sweep(cfg, s0, B, psi, a, p, s_exp);
  auto w1 = sweep(cfg, s1, B, psi, a, p, s_exp);

  ExperimentReport r;
  r.id = cfg.id();
  r.param("p", p);
  r.param("q", q);
  r.param("s", s_exp);
  r.param("alpha", a * s0.mu.ahlfors_n());
  r.param("n", s0.mu.ahlfors_n());
  r.param("B", B.describe());
  r.param("phi", phi.describe());
  r.param("measure", describe_measure(s0));
  r.samples = std::move(w0.samples);
  r.empirical_C = r.max_ratio();
  r.diag("refined_C", w1.C);
  r.diag("exponent_identity_error", identity_error);
  r.diag("phi_bound_C", bound.min_ratio);
  judge_bounded(r, r.empirical_C, w1.C, cfg.get_real("drift_max", kDefaultDriftMax));
  return r;
}

}  // namespace oml
