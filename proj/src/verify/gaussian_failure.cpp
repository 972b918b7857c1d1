#include <cmath>

#include "common.hpp"
#include "oml/error.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

using namespace verify;

namespace {

// (1/2r) int_{x-r}^{x+r} f dmu for each radius.
std::vector<double> averages(const AtomicMeasure& mu, double theta, double x, const std::vector<double>& radii) {
  const auto f = MuFunction::sample(mu, [&](const auto& y) { return std::exp(theta * y.squaredNorm()); });
  std::vector<double> out;
  for (double r : radii) out.push_back(integrate(f, Cube(Eigen::VectorXd::Constant(1, x - r), 2.0 * r)) / (2.0 * r));
  return out;
}

}  // namespace

ExperimentReport exp_gaussian_failure(const ExperimentConfig& cfg) {
  const double theta = cfg.get_real("theta", 2.0);
  const double x = cfg.get_real("x", 1.0);
  const double h = cfg.get_real("measure.resolution", 0x1p-12);
  const double r_min = cfg.get_real("r_min", 0x1p-6);
  const double tolerance = cfg.get_real("limit_tol", 0.01);
  if (!(h > 0.0) || !(r_min > 0.0)) throw ConfigError("measure.resolution and r_min must be positive");
  if (r_min < 8.0 * h)
    throw ConfigError("r_min = " + format_sig12(r_min) + " is below 8 atom spacings (" + format_sig12(8.0 * h) + ")");
  const Cube box = cfg.has("measure.box") ? parse_cube(cfg.get_string("measure.box", "")) :
                                            Cube(Eigen::VectorXd::Constant(1, -8.0), 16.0);
  if (!box.contains(Cube(Eigen::VectorXd::Constant(1, x - 1.0), 2.0)))
    throw ConfigError("measure.box must contain [x - 1, x + 1)");

  std::vector<double> radii;
  for (double r = 1.0; r >= r_min * (1.0 - 1e-12); r *= 0.5) radii.push_back(r);
  const double limit = std::exp((theta - 1.0) * x * x);
  const double fx = std::exp(theta * x * x);
  const auto base = averages(build_gaussian_1d(box, h), theta, x, radii);
  const auto fine = averages(build_gaussian_1d(box, 0.5 * h), theta, x, {radii.back()});

  ExperimentReport r;
  r.id = cfg.id();
  r.param("theta", theta);
  r.param("x", x);
  r.param("resolution", h);
  r.param("r_min", radii.back());
  for (std::size_t j = 0; j < radii.size(); ++j) r.add_sample("r=" + format_sig12(radii[j]), base[j], limit);
  r.empirical_C = r.max_ratio();
  const double avg = base.back();
  const double error = std::abs(avg - limit) / limit;
  r.refinement_drift = relative_change(avg, fine.front());
  r.diag("limit", limit);
  r.diag("f_at_x", fx);
  r.diag("average_at_r_min", avg);
  r.diag("relative_error", error);
  r.diag("f_over_average", fx / avg);
  r.diag("gap_to_f", std::abs(limit - fx));
  r.criterion = "average at r_min within " + format_real(tolerance) + " of exp((theta-1) x^2)";
  r.passed = error <= tolerance;
  return r;
}

}  // namespace oml
