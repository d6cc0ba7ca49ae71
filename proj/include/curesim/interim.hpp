#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curesim/scenario.hpp"
#include "curesim/stats.hpp"
#include "curesim/trial.hpp"

namespace curesim {

// Futility look on the CR odds ratio: the trial passes when the observed
// odds ratio lies strictly above the boundary; ties stop.
struct FutilityRule {
  double boundary = 2.0;
  int n_evaluable = 120;
  double assessment_lag_months = 2.0;
  double decision_lag_months = 1.0;

  void validate() const;
};

FutilityRule futility_rule_from(const InterimPlan& plan);

struct InterimDecision {
  bool pass = false;
  double observed_or = 1.0;
  bool continuity_corrected = false;
  double cutoff_time = 0.0;
  double decision_time = 0.0;
};

InterimDecision simulate_interim_decision(const SimulatedTrial& trial,
                                          const FutilityRule& rule);

struct OCEntry {
  double boundary = 0.0;
  double p_stop_alt = 0.0;        // stop under the alternative scenario
  double se_stop_alt = 0.0;
  double p_continue_null = 0.0;   // continue under the null scenario
  double se_continue_null = 0.0;
  double p_stop_null = 0.0;
  double se_stop_null = 0.0;
  double overall_power = 0.0;     // pass AND final logrank rejects, alternative
  double se_overall_power = 0.0;
  double null_pass_and_reject = 0.0;  // type I error check
};

struct OperatingCharacteristics {
  std::vector<OCEntry> entries;
  double p_reject_alt = 0.0;   // final-analysis power with no interim
  double p_reject_null = 0.0;
  int final_events = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string null_scenario_id;
  std::string alt_scenario_id;
};

// Joint simulation of the interim CR decision and the final logrank outcome
// across a boundary grid. Both scenarios reuse the same per-trial seed
// streams, so the error curves are monotone in the boundary trial by trial.
// Requires mechanistic arm models in both scenarios; trials are generated
// from the mechanistic family regardless of the configured one.
OperatingCharacteristics operating_characteristics(
    const ScenarioConfig& null_scenario, const ScenarioConfig& alt_scenario,
    std::span<const double> boundaries, int final_events, int trials,
    std::uint64_t seed, int threads = 1);

struct QuartileSummary {
  double q25 = 0.0, q50 = 0.0, q75 = 0.0;
};

struct PatientSavings {
  QuartileSummary decision_time;           // calendar months
  QuartileSummary recruited_at_decision;   // all-comer count by decision time
  QuartileSummary not_recruited_if_stop;   // complement to the recruitment cap
  int trials = 0;
  std::uint64_t seed = 0;
};

PatientSavings patient_savings(const ScenarioConfig& scenario,
                               const FutilityRule& rule, int trials,
                               std::uint64_t seed, int threads = 1);

}  // namespace curesim
