#include "curesim/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace curesim {

const char* to_string(Arm arm) {
  return arm == Arm::control ? "control" : "experimental";
}

const char* to_string(ModelFamily family) {
  return family == ModelFamily::cure_mixture ? "cure_mixture" : "mechanistic";
}

void RecruitmentPlan::validate() const {
  if (monthly_targets.empty()) {
    throw std::invalid_argument("recruitment plan has no monthly targets");
  }
  for (int target : monthly_targets) {
    if (target < 0) {
      throw std::invalid_argument("monthly recruitment targets must be >= 0");
    }
  }
  if (!(prevalence > 0.0 && prevalence <= 1.0)) {
    throw std::invalid_argument("prevalence must lie in (0,1]");
  }
  if (total_cap < 0) {
    throw std::invalid_argument("recruitment cap must be >= 0");
  }
}

void InterimPlan::validate() const {
  if (n_evaluable < 2) {
    throw std::invalid_argument("interim needs at least 2 evaluable patients");
  }
  if (assessment_lag_months < 0.0 || decision_lag_months < 0.0) {
    throw std::invalid_argument("interim lags must be >= 0");
  }
  if (!(boundary > 0.0)) {
    throw std::invalid_argument("futility boundary must be positive");
  }
  for (double x : boundary_grid) {
    if (!(x > 0.0)) {
      throw std::invalid_argument("futility boundary grid must be positive");
    }
  }
}

std::vector<double> default_boundary_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(1.0 + 0.1 * i);
  return grid;
}

void ScenarioConfig::validate() const {
  if (!(allocation_ratio > 0.0 && std::isfinite(allocation_ratio))) {
    throw std::invalid_argument("allocation ratio must be positive");
  }
  recruitment.validate();
  for (double tau : {control_monthly_dropout, experimental_monthly_dropout}) {
    if (!(tau >= 0.0 && tau < 1.0)) {
      throw std::invalid_argument("monthly dropout must lie in [0,1)");
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  if (!(horizon_months > 0.0)) {
    throw std::invalid_argument("horizon must be positive");
  }
  if (!(cured_horizon_months > horizon_months)) {
    throw std::invalid_argument("cured horizon must exceed the trial horizon");
  }
  if (family == ModelFamily::cure_mixture) {
    if (!control.survival_law || !experimental.survival_law) {
      throw std::invalid_argument("cure-mixture scenario needs survival laws");
    }
  } else {
    if (!control.mechanistic || !experimental.mechanistic) {
      throw std::invalid_argument("mechanistic scenario needs arm response models");
    }
    control.mechanistic->validate();
    experimental.mechanistic->validate();
  }
  if (interim) interim->validate();
}

namespace {

RecruitmentPlan mirros_recruitment(double prevalence) {
  RecruitmentPlan plan;
  plan.monthly_targets.assign(15, 12);
  plan.monthly_targets.insert(plan.monthly_targets.end(), 15, 17);
  plan.prevalence = prevalence;
  plan.total_cap = 440;
  return plan;
}

constexpr double kMirrosMonthlyDropout = 0.0042652;

}  // namespace

ScenarioConfig mirros_scenario() {
  ScenarioConfig scenario;
  scenario.id = "mirros";
  scenario.family = ModelFamily::cure_mixture;

  scenario.control.survival_law = make_cure_mixture(0.080, make_exponential(0.131));
  scenario.experimental.survival_law =
      make_cure_mixture(0.161, make_exponential(0.101));

  MechanisticArmLaw control_arm;
  control_arm.cr_probability = 0.16;
  control_arm.longterm_given_cr = 0.5;
  control_arm.nonresponder_law = make_exponential_median(5.13);
  control_arm.shortterm_law = make_exponential_median(7.5);
  control_arm.cured_horizon_months = 10000.0;
  scenario.control.mechanistic = control_arm;

  const double hazard_multiplier = 0.8;
  MechanisticArmLaw experimental_arm;
  experimental_arm.cr_probability = cr_odds_transform(0.16, 2.5);
  experimental_arm.longterm_given_cr = 0.5;
  experimental_arm.nonresponder_law =
      make_exponential(hazard_multiplier * std::log(2.0) / 5.13);
  experimental_arm.shortterm_law =
      make_exponential(hazard_multiplier * std::log(2.0) / 7.5);
  experimental_arm.cured_horizon_months = 10000.0;
  scenario.experimental.mechanistic = experimental_arm;

  scenario.allocation_ratio = 2.0;
  scenario.recruitment = mirros_recruitment(0.85);
  scenario.control_monthly_dropout = kMirrosMonthlyDropout;
  scenario.experimental_monthly_dropout = kMirrosMonthlyDropout;
  scenario.alpha = 0.05;
  scenario.target_power = 0.85;
  scenario.horizon_months = 120.0;
  scenario.cured_horizon_months = 10000.0;
  scenario.design_events = 275;

  InterimPlan interim;
  interim.n_evaluable = 120;
  interim.assessment_lag_months = 2.0;
  interim.decision_lag_months = 1.0;
  interim.boundary = 2.0;
  interim.boundary_grid = default_boundary_grid();
  scenario.interim = interim;

  scenario.validate();
  return scenario;
}

ScenarioConfig mirros_ph_nocure_scenario() {
  ScenarioConfig scenario;
  scenario.id = "mirros-ph-nocure";
  scenario.family = ModelFamily::cure_mixture;
  scenario.control.survival_law = make_exponential_median(6.0);
  scenario.experimental.survival_law = make_exponential_median(9.0);
  scenario.allocation_ratio = 2.0;
  scenario.recruitment = mirros_recruitment(1.0);
  scenario.control_monthly_dropout = kMirrosMonthlyDropout;
  scenario.experimental_monthly_dropout = kMirrosMonthlyDropout;
  scenario.alpha = 0.05;
  scenario.target_power = 0.85;
  scenario.horizon_months = 120.0;
  scenario.design_events = 246;
  scenario.validate();
  return scenario;
}

ScenarioConfig derive_null_scenario(const ScenarioConfig& scenario) {
  ScenarioConfig null_scenario = scenario;
  null_scenario.id = scenario.id + "-null";
  null_scenario.experimental = scenario.control;
  null_scenario.experimental_monthly_dropout = scenario.control_monthly_dropout;
  return null_scenario;
}

}  // namespace curesim
