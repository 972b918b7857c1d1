#include <cmath>

#include "common.hpp"
#include "oml/error.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

using namespace verify;

namespace {

struct A1Sweep {
  double C = 0.0;
  double radial_C = 0.0;
  std::vector<Sample> samples;
};

A1Sweep sweep(const ExperimentConfig& cfg, const Setup& s, double alpha) {
  A1Sweep out;
  std::size_t used = 0;
  for (const auto& tf : test_functions(cfg, s.mu.bounding_box())) {
    const auto f = abs(tf.on(s.mu));
    if (integrate(f) == 0.0) continue;
    ++used;
    const auto g = m_radial_alpha(f, alpha, s.family).values;
    const auto mg = m_mu(g, s.family).values;
    const auto rg = m_radial_alpha(g, 0.0, s.family).values;
    Sample best{tf.tag, 0.0, 0.0, -1.0};
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const double ratio = sample_ratio(mg[i], g[i]);
      if (ratio > best.ratio) best = {tf.tag + "/atom" + std::to_string(i), mg[i], g[i], ratio};
      out.radial_C = std::max(out.radial_C, sample_ratio(rg[i], g[i]));
    }
    out.C = std::max(out.C, best.ratio);
    out.samples.push_back(std::move(best));
  }
  if (used == 0) throw DegenerateInputError("a1: every test function vanishes mu-almost everywhere");
  return out;
}

}  // namespace

ExperimentReport exp_a1(const ExperimentConfig& cfg) {
  const double a = cfg.get_real("alpha_over_n", 0.5);
  if (!(a > 0.0 && a < 1.0)) throw ConfigError("a1 needs 0 < alpha/n < 1");
  const Setup s0 = build_setup(cfg, 0);
  const Setup s1 = build_setup(cfg, 1);
  const double alpha = a * s0.mu.ahlfors_n();
  auto w0 = sweep(cfg, s0, alpha);
  auto w1 = sweep(cfg, s1, alpha);

  ExperimentReport r;
  r.id = cfg.id();
  r.param("alpha", alpha);
  r.param("n", s0.mu.ahlfors_n());
  r.param("outer_operator", "mu-average");
  r.param("measure", describe_measure(s0));
  r.samples = std::move(w0.samples);
  r.empirical_C = r.max_ratio();
  r.diag("refined_C", w1.C);
  r.diag("radial_outer_C", w0.radial_C);
  r.diag("refined_radial_outer_C", w1.radial_C);
  judge_bounded(r, r.empirical_C, w1.C, cfg.get_real("drift_max", kDefaultDriftMax));
  return r;
}

}  // namespace oml
