#include <cmath>

#include "common.hpp"
#include "oml/error.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

using namespace verify;

namespace {

struct WtlParams {
  double p;
  double q;
  double alpha;
  std::string weights;
  YoungFunction Phi;
};

WtlParams read_params(const ExperimentConfig& cfg) {
  const double p = cfg.get_real("p", 2.0);
  const double alpha = cfg.get_real("alpha", 0.25);
  if (!(p > 1.0)) throw ConfigError("p must exceed 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in [0, 1)");
  const double q = cfg.has("q") ? cfg.get_real("q", 0.0) : sobolev_exponent(p, alpha);
  const double r = cfg.get_real("r", 2.0);
  auto Phi = cfg.has("young.Phi") ? young_param(cfg, "young.Phi", "") : two_weight_A(r, p);
  return {p, q, alpha, cfg.get_string("weights", "unit"), std::move(Phi)};
}

struct Pass {
  std::vector<GenerationSup> sups;
  double sup = 0.0;
  double gap = 0.0;
  double norm_ratio = 0.0;
};

Pass evaluate(const ExperimentConfig& cfg, const Setup& s, const WtlParams& P, double n, bool with_norms) {
  Pass out;
  const Weights w = make_weights(P.weights, s, P.p, P.q);
  out.sups = condition_wtl_sups(s, w, P.Phi, P.alpha, P.p, P.q, n);
  if (out.sups.empty()) throw DegenerateInputError("condition_wtl: every family cube has zero measure");
  for (const auto& g : out.sups) out.sup = std::max(out.sup, g.value);
  out.gap = ahlfors_gap(s.mu, family_cubes(s.mu, s.family), n).sup;
  if (with_norms) {
    for (const auto& tf : test_functions(cfg, s.mu.bounding_box())) {
      const auto f = tf.on(s.mu);
      const double rhs = weighted_norm(f, P.p, w.v);
      if (rhs == 0.0) continue;
      const double lhs = weighted_norm(m_wtl_alpha(f, P.alpha, s.family).values, P.q, w.u);
      out.norm_ratio = std::max(out.norm_ratio, lhs / rhs);
    }
  }
  return out;
}

}  // namespace

ExperimentReport exp_condition_wtl(const ExperimentConfig& cfg) {
  const WtlParams P = read_params(cfg);
  const Setup s0 = build_setup(cfg, 0);
  const Setup s1 = build_setup(cfg, 1);
  const double n = cfg.get_real("n_test", s0.mu.ahlfors_n());
  const bool bounded = expect_bounded(cfg, s0.kind);
  const bool norms = cfg.get_int("norm_sweep", 1) != 0;
  const Pass a = evaluate(cfg, s0, P, n, norms);
  const Pass b = evaluate(cfg, s1, P, n, norms);

  ExperimentReport r;
  r.id = cfg.id();
  r.param("p", P.p);
  r.param("q", P.q);
  r.param("alpha", P.alpha);
  r.param("n_test", n);
  r.param("Phi", P.Phi.describe());
  r.param("weights", P.weights);
  r.param("measure", describe_measure(s0));
  r.param("expect", bounded ? "bounded" : "unbounded");
  for (const auto& g : a.sups) r.add_sample("k=" + std::to_string(g.k), g.value, 1.0);
  r.empirical_C = r.max_ratio();
  r.diag("refined_sup", b.sup);
  r.diag("ahlfors_gap", a.gap);
  r.diag("refined_ahlfors_gap", b.gap);
  if (norms) {
    r.diag("informational_wtl_norm_ratio", a.norm_ratio);
    r.diag("informational_refined_wtl_norm_ratio", b.norm_ratio);
  }
  if (bounded)
    judge_bounded(r, a.sup, b.sup, cfg.get_real("drift_max", kDefaultDriftMax));
  else
    judge_unbounded(r, a.sup, b.sup, cfg.get_real("growth_min", 0.25));
  return r;
}

ExperimentReport exp_ahlfors_gap(const ExperimentConfig& cfg) {
  WtlParams P = read_params(cfg);
  if (!cfg.has("weights")) P.weights = "mu_power";
  const Setup s0 = build_setup(cfg, 0);
  const Setup s1 = build_setup(cfg, 1);
  const double n = cfg.get_real("n_test", s0.mu.ahlfors_n());
  const bool bounded = expect_bounded(cfg, s0.kind);
  const Pass a = evaluate(cfg, s0, P, n, false);
  const Pass b = evaluate(cfg, s1, P, n, false);

  ExperimentReport r;
  r.id = cfg.id();
  r.param("p", P.p);
  r.param("q", P.q);
  r.param("alpha", P.alpha);
  r.param("n_test", n);
  r.param("Phi", P.Phi.describe());
  r.param("weights", P.weights);
  r.param("measure", describe_measure(s0));
  r.param("expect", bounded ? "bounded" : "unbounded");
  r.add_sample("condition_sup/base", a.sup, 1.0);
  r.add_sample("condition_sup/refined", b.sup, 1.0);
  r.add_sample("ahlfors_gap/base", a.gap, 1.0);
  r.add_sample("ahlfors_gap/refined", b.gap, 1.0);
  r.empirical_C = r.max_ratio();
  const double cond_change = relative_change(a.sup, b.sup);
  const double gap_change = relative_change(a.gap, b.gap);
  r.diag("condition_change", cond_change);
  r.diag("gap_change", gap_change);
  r.refinement_drift = std::max(cond_change, gap_change);
  if (bounded) {
    const double m = cfg.get_real("drift_max", kDefaultDriftMax);
    r.criterion = "condition sup and gap both change by at most " + format_real(m);
    r.passed = std::isfinite(a.sup) && std::isfinite(a.gap) && cond_change <= m && gap_change <= m;
  } else {
    const double g = cfg.get_real("growth_min", 0.25);
    r.criterion = "condition sup and gap both grow by more than " + format_real(g);
    r.passed = b.sup > (1.0 + g) * a.sup && b.gap > (1.0 + g) * a.gap;
  }
  return r;
}

}  // namespace oml
