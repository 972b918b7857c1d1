#include <algorithm>

#include "oml/verify.hpp"

namespace oml {

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> registry = {
      {"weak_modular", "modular weak-type bound for M_{alpha,B}",
       "phi_1(mu{M_{alpha,B} f > t}) <= C int B(|f|/t) dmu when B(t)/t^{n/alpha} is nonincreasing",
       &exp_weak_modular},
      {"two_weight", "two-weight L^p(v) -> L^q(u) bound for M_{alpha,B}",
       "||M_{alpha,B} f||_{L^q(u)} <= C ||f||_{L^p(v)} under the cube condition l^{alpha-n/p} u(3Q)^{1/q} "
       "||v^{-1/p}||_{A,Q} <= K",
       &exp_two_weight},
      {"condition_wtl", "cube condition for the weighted fractional operator with mu(5Q)",
       "sup over cubes of l^{n(1-1/p)} mu(Q)^{alpha-1} u(3Q)^{1/q} ||v^{-1/p}||_{Phi,Q}, reported with the "
       "Ahlfors gap",
       &exp_condition_wtl},
      {"pointwise_control", "pointwise domination of M_{alpha,B} by M_psi",
       "M_{alpha,B} f(x) <= C M_psi(|f|^{p/s})(x)^{1-alpha/n} (int |f|^p dmu)^{alpha/n} with psi(t) = "
       "phi(t^{1-alpha/n}) and s = 1 + q/p'",
       &exp_pointwise_control},
      {"lp_bounds", "Lebesgue space bounds for M_B and M_{alpha,B}",
       "M_B: L^p -> L^p when B is in B_p; M_{alpha,B}: L^p -> L^q when B^{q/p} is in B_q; at p = n/alpha, "
       "M_{alpha,B} f <= C ||f||_{n/alpha}",
       &exp_lp_bounds},
      {"a1", "the fractional maximal function is an A_1 weight",
       "M(M_alpha f)(x) <= C M_alpha f(x) for nonnegative f", &exp_a1},
      {"bp_inheritance", "B_s membership of psi(t) = phi(t^{1-alpha/n})",
       "psi is in B_s with s = q(1 - alpha/n) when B^{q/p} is in B_q and phi^{-1}(t) t^{alpha/n} >= C B^{-1}(t)",
       &exp_bp_inheritance},
      {"gaussian_failure", "Lebesgue differentiation fails for the Gaussian measure with radial averages",
       "(1/2r) int_{x-r}^{x+r} e^{theta t^2} e^{-t^2} dt tends to e^{(theta-1)x^2}, not f(x) = e^{theta x^2}",
       &exp_gaussian_failure},
      {"ahlfors_gap", "the cube condition forces the measure to be Ahlfors",
       "the condition sup for (u, (M_mu u)^{p/q}) grows together with sup l(Q)^n / mu(Q)", &exp_ahlfors_gap},
  };
  return registry;
}

const ExperimentInfo* find_experiment(std::string_view id) {
  const auto& r = experiment_registry();
  auto it = std::find_if(r.begin(), r.end(), [&](const ExperimentInfo& e) { return e.id == id; });
  return it == r.end() ? nullptr : &*it;
}

}  // namespace oml
