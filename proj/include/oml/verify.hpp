#pragma once

#include <string_view>
#include <vector>

#include "oml/config.hpp"
#include "oml/maximal.hpp"
#include "oml/report.hpp"

namespace oml {

// Each experiment runs its hypothesis checks first (HypothesisError names the
// failing check), then sweeps test functions on a base discretization and on
// one refinement (finer atoms and one more family generation).
ExperimentReport exp_weak_modular(const ExperimentConfig& cfg);
ExperimentReport exp_two_weight(const ExperimentConfig& cfg);
ExperimentReport exp_condition_wtl(const ExperimentConfig& cfg);
ExperimentReport exp_pointwise_control(const ExperimentConfig& cfg);
ExperimentReport exp_lp_bounds(const ExperimentConfig& cfg);
ExperimentReport exp_a1(const ExperimentConfig& cfg);
ExperimentReport exp_bp_inheritance(const ExperimentConfig& cfg);
ExperimentReport exp_gaussian_failure(const ExperimentConfig& cfg);
ExperimentReport exp_ahlfors_gap(const ExperimentConfig& cfg);

struct ExperimentInfo {
  std::string_view id;
  std::string_view summary;
  std::string_view statement;
  ExperimentReport (*run)(const ExperimentConfig&);
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo* find_experiment(std::string_view id);

// M_{alpha,B} of the first test function on the base discretization, with
// young.B (linlog:k=1) and alpha_over_n (0) read from cfg.
MaximalField sidecar_field(const ExperimentConfig& cfg);

}  // namespace oml
