#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curesim/survival.hpp"

namespace curesim {

enum class Arm : unsigned char { control = 0, experimental = 1 };

const char* to_string(Arm arm);

// Which per-arm model the trial generator samples from. The cure-mixture
// family also covers plain exponential arms (cure proportion 0).
enum class ModelFamily : unsigned char { cure_mixture, mechanistic };

const char* to_string(ModelFamily family);

// Planned overall accrual. monthly_targets[j] patients arrive in calendar
// month j (all comers, before biomarker thinning); recruitment continues at
// the last listed rate until total_cap patients have been recruited, with the
// final month truncated. Each recruited patient is analysis-eligible with
// probability `prevalence`; only eligible patients enter datasets.
struct RecruitmentPlan {
  std::vector<int> monthly_targets;
  double prevalence = 1.0;
  int total_cap = 0;

  void validate() const;
};

struct InterimPlan {
  int n_evaluable = 120;
  double assessment_lag_months = 2.0;
  double decision_lag_months = 1.0;
  double boundary = 2.0;
  std::vector<double> boundary_grid;  // empty: use default_boundary_grid()

  void validate() const;
};

// Boundaries 1.0, 1.1, ..., 3.0.
std::vector<double> default_boundary_grid();

struct ScenarioArm {
  LawPtr survival_law;                         // cure-mixture family law
  std::optional<MechanisticArmLaw> mechanistic;
};

// Full trial-design assumptions for one scenario. A scenario may carry both
// the cure-mixture laws (used to size the trial) and the mechanistic response
// model (used for the futility interim); `family` picks the one the plain
// trial generator samples from.
struct ScenarioConfig {
  std::string id;
  ModelFamily family = ModelFamily::cure_mixture;
  ScenarioArm control;
  ScenarioArm experimental;
  double allocation_ratio = 1.0;  // r = n_experimental / n_control
  RecruitmentPlan recruitment;
  double control_monthly_dropout = 0.0;
  double experimental_monthly_dropout = 0.0;
  double alpha = 0.05;
  double target_power = 0.85;
  double horizon_months = 120.0;
  double cured_horizon_months = 10000.0;
  std::optional<int> design_events;
  std::optional<InterimPlan> interim;

  double control_probability() const { return 1.0 / (1.0 + allocation_ratio); }
  double monthly_dropout(Arm arm) const {
    return arm == Arm::control ? control_monthly_dropout
                               : experimental_monthly_dropout;
  }
  const ScenarioArm& arm_config(Arm arm) const {
    return arm == Arm::control ? control : experimental;
  }
  void validate() const;
};

// Bundled presets.
//
// mirros_scenario: relapsed/refractory AML trial assumptions — cure-mixture
// arms (rates 0.131/0.101, cure 0.080/0.161), mechanistic response model
// (control CR 0.16, odds ratio 2.5, half of responders long-term, control
// non/short-term medians 5.13/7.5 months, experimental hazard ratio 0.8),
// 2:1 allocation, 12/month for 15 months then 17/month to 440 recruited,
// 85% biomarker prevalence, monthly dropout 0.0042652, alpha 0.05, 120
// CR-evaluable interim patients with 2 + 1 month lags, boundary 2.
ScenarioConfig mirros_scenario();

// Same accrual and dropout, exponential arms with medians 6 and 9 months, no
// cure, no biomarker thinning: the proportional-hazards template design.
ScenarioConfig mirros_ph_nocure_scenario();

// Copy of `scenario` whose experimental arm performs exactly as control.
ScenarioConfig derive_null_scenario(const ScenarioConfig& scenario);

}  // namespace curesim
