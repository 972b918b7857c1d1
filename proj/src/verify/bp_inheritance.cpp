#include <cmath>

#include "common.hpp"
#include "oml/error.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

using namespace verify;

namespace {

struct IdentitySides {
  double direct;
  double substituted;
};

// int_1^inf psi(t) t^{-s} dt/t and (1/(1-a)) int_1^inf phi(r) r^{-s/(1-a)} dr/r
IdentitySides identity_sides(const YoungFunction& phi, const YoungFunction& psi, double a, double s, double tol) {
  const auto i1 = tail_integral([&](double t) { return psi(t) * std::pow(t, -s - 1.0); }, 1.0, tol);
  const double e = s / (1.0 - a);
  const auto i2 = tail_integral([&](double r) { return phi(r) * std::pow(r, -e - 1.0); }, 1.0, tol);
  if (!i1.converged || !i2.converged) throw DomainError("change-of-variables integrals did not converge");
  return {i1.value, i2.value / (1.0 - a)};
}

}  // namespace

ExperimentReport exp_bp_inheritance(const ExperimentConfig& cfg) {
  const double p = cfg.get_real("p", 2.0);
  const double a = cfg.get_real("alpha_over_n", 0.25);
  const double k = cfg.get_real("k", 1.0);
  if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha_over_n must lie in [0, 1)");
  if (!(p > 1.0 && p * a < 1.0)) throw ConfigError("bp_inheritance needs 1 < p < n/alpha");
  const double q = sobolev_exponent(p, a);
  const double s = q * (1.0 - a);
  const double tolerance = cfg.get_real("identity_tol", 0.01);

  const auto B = young_param(cfg, "young.B", "linlog:k=1");
  const auto phi = cfg.has("young.phi") ? young_param(cfg, "young.phi", "") : power_log(1.0 / (1.0 - a), k);
  const auto psi = psi_from(phi, a);

  const auto sub = check_submultiplicative(B);
  require(sub.certified(), "check_submultiplicative",
          B.describe() + " has B(st)/(B(s)B(t)) = " + format_sig12(sub.worst_ratio));
  const auto bq = check_bp(power_scaled(B, q / p), q);
  require(bq.converges(), "check_bp", "B^{q/p} in B_q fails: " + bq.diagnostic);
  const GeometricGrid grid{0x1p-20, 0x1p20, 161};
  const auto bound = inverse_ratio([&](double t) { return inverse(phi, t) * std::pow(t, a); },
                                   [&](double t) { return inverse(B, t); }, grid);
  require(bound.min_ratio >= 0.125, "phi_inverse_bound",
          "phi^{-1}(t) t^{alpha/n} / B^{-1}(t) drops to " + format_sig12(bound.min_ratio) + " at t = " +
              format_sig12(bound.argmin_t));

  const auto verdict = check_bp(psi, s);
  const auto fine = identity_sides(phi, psi, a, s, 1e-12);
  const auto coarse = identity_sides(phi, psi, a, s, 1e-6);

  ExperimentReport r;
  r.id = cfg.id();
  r.param("p", p);
  r.param("q", q);
  r.param("s", s);
  r.param("alpha_over_n", a);
  r.param("B", B.describe());
  r.param("phi", phi.describe());
  r.param("psi", psi.describe());
  r.add_sample("change_of_variables", fine.direct, fine.substituted);
  r.empirical_C = r.max_ratio();
  r.refinement_drift = relative_change(sample_ratio(coarse.direct, coarse.substituted), r.empirical_C);
  r.diag("psi_bp_state", verdict.converges() ? "converges" : verdict.diagnostic);
  r.diag("psi_bp_tail", verdict.tail_estimate);
  r.diag("identity_error", std::abs(r.empirical_C - 1.0));
  r.criterion = "psi in B_s converges and the change-of-variables sides agree within " + format_real(tolerance);
  r.passed = verdict.converges() && std::abs(r.empirical_C - 1.0) <= tolerance;
  return r;
}

}  // namespace oml
