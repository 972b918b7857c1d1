#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oml/config.hpp"
#include "oml/maximal.hpp"
#include "oml/measure.hpp"
#include "oml/report.hpp"
#include "oml/test_functions.hpp"
#include "oml/young.hpp"

namespace oml::verify {

inline constexpr double kDefaultDriftMax = 0.25;

// Discretization at refinement level 0 (base) or 1.
struct Setup {
  AtomicMeasure mu;
  CubeFamilySpec family;
  std::string kind;
};

// measure.kind = lebesgue | gaussian | cantor
// lebesgue: measure.d (1), measure.box ([0,1)^d), measure.resolution (2^-8)
// gaussian: measure.box ([-8,8)), measure.resolution (2^-8)
// cantor:   measure.levels (8)
// family.k_min, family.k_max, family.shifts (3); refine.box_scale scales the
// box about its centre once per level.
Setup build_setup(const ExperimentConfig& cfg, int level);

std::vector<TestFunction> test_functions(const ExperimentConfig& cfg, const Cube& box);

YoungFunction young_param(const ExperimentConfig& cfg, const std::string& key, const std::string& fallback);

// |c1 - c0| / c0 (0 when both vanish).
double relative_change(double c0, double c1);

// expect = bounded | unbounded; default bounded on Lebesgue, unbounded otherwise.
bool expect_bounded(const ExperimentConfig& cfg, const std::string& kind);

// Drift criterion for "there exists C" experiments; fills drift, verdict and criterion.
void judge_bounded(ExperimentReport& r, double c0, double c1, double drift_max);
// Growth criterion for counterexamples: c1 > (1 + growth_min) c0.
void judge_unbounded(ExperimentReport& r, double c0, double c1, double growth_min);

void require(bool ok, const std::string& check, const std::string& detail);

// Weighted L^q norm (sum |g|^q w m)^{1/q}.
double weighted_norm(const MuFunction& g, double q, const MuFunction& w);

// 1 / (1/p - a) with a = alpha/n; throws ConfigError when not in (p, inf).
double sobolev_exponent(double p, double a);

std::string describe_measure(const Setup& s);

// Bounded density 1.5 + 0.5 cos(2 pi |x - c| / L) on the measure's box.
MuFunction bounded_density(const AtomicMeasure& mu);

struct Weights {
  MuFunction u;
  MuFunction v;
};

// "unit": u = v = 1. "mu_power": u = bounded_density, v = (M_mu u)^{p/q}.
Weights make_weights(const std::string& kind, const Setup& s, double p, double q);

// Per-generation sup over family cells of
// l^{n(1-1/p)} mu(Q)^{alpha-1} u(3Q)^{1/q} ||v^{-1/p}||_{Phi,Q}
// with the Luxemburg average normalised by l^n.
struct GenerationSup {
  int k;
  double value;
};
std::vector<GenerationSup> condition_wtl_sups(const Setup& s, const Weights& w, const YoungFunction& Phi,
                                              double alpha, double p, double q, double n);

}  // namespace oml::verify
