#pragma once

#include <utility>
#include <vector>

#include "curesim/rng.hpp"
#include "curesim/scenario.hpp"

namespace curesim {

enum class ResponderClass : unsigned char {
  uncured,        // cure-mixture runs: event drawn from the uncured law
  cured,          // cure-mixture runs: in the cured mass
  non_responder,  // mechanistic runs
  short_term,
  long_term,
};

const char* to_string(ResponderClass cls);

struct PatientRecord {
  Arm arm = Arm::control;
  ResponderClass responder_class = ResponderClass::uncured;
  bool cr_flag = false;        // short- or long-term responder
  double rand_time = 0.0;      // calendar months from trial start
  double latent_event_time = 0.0;  // months since randomization
  double dropout_time = 0.0;       // months since randomization
  // Filled by cuts:
  double observed_time = 0.0;
  bool event_flag = false;
};

struct Recruitment {
  std::vector<std::pair<double, Arm>> eligible;  // sorted calendar times
  std::vector<double> allcomer_arrivals;         // sorted, pre-thinning
};

// One simulated trial with latent outcomes for every eligible patient,
// sorted by randomization time.
struct SimulatedTrial {
  std::vector<PatientRecord> patients;
  std::vector<double> allcomer_arrivals;

  // All-comer count recruited by calendar time t.
  int recruited_by(double calendar_time) const;
};

enum class CutRule : unsigned char { event_count, evaluable_count, calendar };

struct TrialDataset {
  std::vector<PatientRecord> patients;
  double cut_time = 0.0;
  CutRule cut_rule = CutRule::calendar;
  int cut_parameter = 0;
  bool under_evented = false;  // fewer than d events within the horizon
};

// Monthly accrual with binomial biomarker thinning and binomial allocation
// (control probability 1/(1+r)); arrival times are sorted uniform draws
// within each month. Recruitment runs at the last listed rate until the
// all-comer cap, truncating the final month.
Recruitment generate_recruitment(const RecruitmentPlan& plan,
                                 double control_probability, Rng& rng);

// Draws responder class, latent event time and dropout time for one patient.
// Draw order per patient: class/event uniform(s), then the dropout uniform.
void sample_patient_outcome(PatientRecord& patient, const ScenarioConfig& scenario,
                            Rng& rng);

SimulatedTrial generate_trial(const ScenarioConfig& scenario, Rng& rng);

// Administrative censoring at the calendar time of the d-th event. Trials
// with fewer than d events inside the horizon are cut at the horizon and
// flagged under-evented.
TrialDataset cut_at_event_count(const SimulatedTrial& trial, int event_count,
                                double horizon_months);

struct InterimCut {
  TrialDataset data;        // exactly the first n evaluable patients
  double cutoff_time;       // randomization time of the n-th patient
  double decision_time;     // cutoff + assessment lag + decision lag
};

// Interim dataset of the first n analysis-eligible patients. Recruitment is
// not suspended during the lags; later patients stay in the trial but are
// excluded here.
InterimCut cut_at_evaluable_count(const SimulatedTrial& trial, int n_evaluable,
                                  double assessment_lag_months,
                                  double decision_lag_months);

}  // namespace curesim
