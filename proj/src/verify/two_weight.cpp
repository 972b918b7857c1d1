#include <cmath>

#include "common.hpp"
#include "oml/error.hpp"
#include "oml/luxemburg.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

using namespace verify;

namespace {

// sup over family cells of l^{alpha - n/p} u(3Q)^{1/q} ||v^{-1/p}||_{A,Q}
double condition_constant(const Setup& s, const Weights& w, const YoungFunction& A, double alpha, double p,
                          double q) {
  const double n = s.mu.ahlfors_n();
  const auto vinv = pow(w.v, -1.0 / p);
  const auto& m = s.mu.masses();
  double K = 0.0;
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
    const double norm = luxemburg_norm(vals, masses, std::pow(l, n), A);
    const double u3 = c.dilated_integral(w.u.values(), 1);
    K = std::max(K, std::pow(l, alpha - n / p) * std::pow(u3, 1.0 / q) * norm);
  });
  return K;
}

struct Sweep {
  double C = 0.0;
  double K = 0.0;
  std::vector<Sample> samples;
};

Sweep run(const ExperimentConfig& cfg, const Setup& s, const YoungFunction& A, const YoungFunction& B, double a,
          double p, double q, const std::string& weights) {
  const double alpha = a * s.mu.ahlfors_n();
  const Weights w = make_weights(weights, s, p, q);
  Sweep out;
  out.K = condition_constant(s, w, A, alpha, p, q);
  for (const auto& tf : test_functions(cfg, s.mu.bounding_box())) {
    const auto f = tf.on(s.mu);
    const double rhs = weighted_norm(f, p, w.v);
    if (rhs == 0.0) continue;
    const auto field = m_alpha_B(f, alpha, B, s.family);
    const double lhs = weighted_norm(field.values, q, w.u);
    out.samples.push_back({tf.tag, lhs, rhs, sample_ratio(lhs, rhs)});
    out.C = std::max(out.C, out.samples.back().ratio);
  }
  return out;
}

}  // namespace

ExperimentReport exp_two_weight(const ExperimentConfig& cfg) {
  const double p = cfg.get_real("p", 2.0);
  const double a = cfg.get_real("alpha_over_n", 0.25);
  const double k = cfg.get_real("k", 1.0);
  const double r_exp = cfg.get_real("r", 2.0);
  if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha_over_n must lie in [0, 1)");
  const double q = cfg.has("q") ? cfg.get_real("q", 0.0) : sobolev_exponent(p, a);
  if (!(1.0 < p && p < q && std::isfinite(q))) throw ConfigError("two_weight needs 1 < p < q < inf");
  const double p0 = cfg.get_real("p0", p);
  const double q0 = cfg.get_real("q0", q);
  const std::string weights = cfg.get_string("weights", "unit");
  const double drift_max = cfg.get_real("drift_max", kDefaultDriftMax);

  const auto B = cfg.has("young.B") ? young_param(cfg, "young.B", "") : linear_log(k);
  const auto A = cfg.has("young.A") ? young_param(cfg, "young.A", "") : two_weight_A(r_exp, p);
  const auto C = cfg.has("young.C") ? young_param(cfg, "young.C", "") : two_weight_C(r_exp, p, k);
  const auto phi = cfg.has("young.phi") ? young_param(cfg, "young.phi", "") : two_weight_phi(a, k);

  const auto sub = check_submultiplicative(B);
  require(sub.certified(), "check_submultiplicative",
          B.describe() + " has B(st)/(B(s)B(t)) = " + format_sig12(sub.worst_ratio) + " at s = " +
              format_sig12(sub.worst_s) + ", t = " + format_sig12(sub.worst_t));
  const auto bq = check_bp(power_scaled(B, q0 / p0), q0);
  require(bq.converges(), "check_bp", "B^{q0/p0} in B_{q0} fails: " + bq.diagnostic);

  const GeometricGrid grid{0x1p-20, 0x1p20, 161};
  const auto sandwich = inverse_ratio([&](double t) { return inverse(B, t); },
                                      [&](double t) { return inverse(phi, t) * std::pow(t, a); }, grid);
  require(sandwich.max_ratio <= 8.0 * sandwich.min_ratio, "inverse_sandwich",
          "B^{-1} / (phi^{-1} t^{alpha/n}) ranges over [" + format_sig12(sandwich.min_ratio) + ", " +
              format_sig12(sandwich.max_ratio) + "]");
  const auto prod = inverse_product_constant(B, A, C, 1.0);
  require(prod.c <= 8.0, "inverse_product",
          "A^{-1} C^{-1} / B^{-1} reaches " + format_sig12(prod.c) + " at t = " + format_sig12(prod.worst_t));
  const auto cp = check_bp(C, p);
  require(cp.converges(), "check_bp", "C in B_p fails: " + cp.diagnostic);

  const Setup s0 = build_setup(cfg, 0);
  const Setup s1 = build_setup(cfg, 1);
  auto w0 = run(cfg, s0, A, B, a, p, q, weights);
  auto w1 = run(cfg, s1, A, B, a, p, q, weights);

  ExperimentReport r;
  r.id = cfg.id();
  r.param("p", p);
  r.param("q", q);
  r.param("alpha", a * s0.mu.ahlfors_n());
  r.param("n", s0.mu.ahlfors_n());
  r.param("A", A.describe());
  r.param("B", B.describe());
  r.param("C", C.describe());
  r.param("weights", weights);
  r.param("measure", describe_measure(s0));
  r.samples = std::move(w0.samples);
  r.empirical_C = r.max_ratio();
  r.diag("K", w0.K);
  r.diag("refined_K", w1.K);
  r.diag("refined_C", w1.C);
  r.diag("sandwich_C1", sandwich.min_ratio);
  r.diag("sandwich_C2", sandwich.max_ratio);
  r.diag("inverse_product_c", prod.c);
  r.diag("submultiplicative_ratio", sub.worst_ratio);
  judge_bounded(r, r.empirical_C, w1.C, drift_max);
  if (!std::isfinite(w0.K) || !std::isfinite(w1.K)) r.passed = false;
  return r;
}

}  // namespace oml
