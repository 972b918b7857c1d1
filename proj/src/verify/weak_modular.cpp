#include <cmath>

#include "common.hpp"
#include "oml/error.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

using namespace verify;

namespace {

struct WeakSweep {
  double C = 0.0;
  double inverted_C = 0.0;
  std::vector<Sample> samples;
};

WeakSweep sweep(const ExperimentConfig& cfg, const Setup& s, const YoungFunction& B, double a, bool inverted,
                int t_points) {
  const double n = s.mu.ahlfors_n();
  const double alpha = a * n;
  WeakSweep out;
  for (const auto& tf : test_functions(cfg, s.mu.bounding_box())) {
    const auto f = tf.on(s.mu);
    const auto field = m_alpha_B(f, alpha, B, s.family);
    const double top = field.values.values().maxCoeff();
    if (top == 0.0) {
      out.samples.push_back({tf.tag + "/zero", 0.0, 0.0, 0.0});
      continue;
    }
    for (int j = 0; j < t_points; ++j) {
      const double t = top * std::pow(0.01, 1.0 - static_cast<double>(j) / (t_points - 1));
      const double level = level_set_measure(field.values, t);
      double rhs = 0.0;
      for (Eigen::Index i = 0; i < f.size(); ++i) rhs += B(std::abs(f[i]) / t) * s.mu.masses()[i];
      const double lhs = phi1(B, alpha, n, level);
      const double ratio = sample_ratio(lhs, rhs);
      out.C = std::max(out.C, ratio);
      out.samples.push_back({tf.tag + "/t" + std::to_string(j), lhs, rhs, ratio});
      if (inverted && rhs > 0.0) {
        const double psi = std::pow(rhs * std::log(std::exp(1.0) + std::pow(rhs, a)), 1.0 / (1.0 - a));
        out.inverted_C = std::max(out.inverted_C, level / psi);
      }
    }
  }
  return out;
}

}  // namespace

ExperimentReport exp_weak_modular(const ExperimentConfig& cfg) {
  const auto B = young_param(cfg, "young.B", "linlog:k=1");
  const double a = cfg.get_real("alpha_over_n", 0.0);
  if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha_over_n must lie in [0, 1)");
  const int t_points = static_cast<int>(cfg.get_int("t_points", 32));
  if (t_points < 2) throw ConfigError("t_points must be >= 2");
  const double drift_max = cfg.get_real("drift_max", kDefaultDriftMax);

  if (a > 0.0) {
    // B(t) / t^{n/alpha} nonincreasing
    const double e = 1.0 / a;
    double prev = std::numeric_limits<double>::infinity();
    for (double t : GeometricGrid{0x1p-20, 0x1p20, 256}.points()) {
      const double r = B(t) / std::pow(t, e);
      require(r <= prev * (1.0 + 1e-9), "growth_bound",
              "B(t)/t^{n/alpha} increases at t = " + format_sig12(t) + " for " + B.describe());
      prev = r;
    }
  }

  const bool inverted = std::holds_alternative<LinearLogFamily>(B.family());
  const Setup s0 = build_setup(cfg, 0);
  const Setup s1 = build_setup(cfg, 1);
  auto w0 = sweep(cfg, s0, B, a, inverted, t_points);
  auto w1 = sweep(cfg, s1, B, a, inverted, t_points);

  ExperimentReport r;
  r.id = cfg.id();
  r.param("B", B.describe());
  r.param("alpha", a * s0.mu.ahlfors_n());
  r.param("n", s0.mu.ahlfors_n());
  r.param("d", static_cast<double>(s0.mu.dim()));
  r.param("measure", describe_measure(s0));
  r.param("family", "k=" + std::to_string(s0.family.k_min) + ".." + std::to_string(s0.family.k_max) +
                        ",shifts=" + std::to_string(s0.family.shifts_per_axis));
  r.samples = std::move(w0.samples);
  r.empirical_C = r.max_ratio();
  r.diag("refined_C", w1.C);
  if (inverted) {
    r.diag("inverted_C", w0.inverted_C);
    r.diag("refined_inverted_C", w1.inverted_C);
  }
  judge_bounded(r, r.empirical_C, w1.C, drift_max);
  return r;
}

}  // namespace oml
