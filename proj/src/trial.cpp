#include "curesim/trial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curesim {

const char* to_string(ResponderClass cls) {
  switch (cls) {
    case ResponderClass::uncured: return "uncured";
    case ResponderClass::cured: return "cured";
    case ResponderClass::non_responder: return "non";
    case ResponderClass::short_term: return "short";
    case ResponderClass::long_term: return "long";
  }
  return "?";
}

int SimulatedTrial::recruited_by(double calendar_time) const {
  return static_cast<int>(std::upper_bound(allcomer_arrivals.begin(),
                                           allcomer_arrivals.end(),
                                           calendar_time) -
                          allcomer_arrivals.begin());
}

Recruitment generate_recruitment(const RecruitmentPlan& plan,
                                 double control_probability, Rng& rng) {
  plan.validate();
  if (!(control_probability > 0.0 && control_probability < 1.0)) {
    throw std::invalid_argument("control probability must lie in (0,1)");
  }

  Recruitment out;
  int recruited = 0;
  std::vector<double> month_times;
  for (std::size_t month = 0; recruited < plan.total_cap; ++month) {
    const int target = month < plan.monthly_targets.size()
                           ? plan.monthly_targets[month]
                           : plan.monthly_targets.back();
    if (month >= plan.monthly_targets.size() && target == 0) break;
    const int count = std::min(target, plan.total_cap - recruited);
    month_times.clear();
    for (int k = 0; k < count; ++k) {
      month_times.push_back(static_cast<double>(month) + rng.uniform_open01());
    }
    std::sort(month_times.begin(), month_times.end());
    for (double t : month_times) {
      out.allcomer_arrivals.push_back(t);
      if (rng.bernoulli(plan.prevalence)) {
        const Arm arm = rng.bernoulli(control_probability) ? Arm::control
                                                           : Arm::experimental;
        out.eligible.emplace_back(t, arm);
      }
    }
    recruited += count;
  }
  return out;
}

void sample_patient_outcome(PatientRecord& patient,
                            const ScenarioConfig& scenario, Rng& rng) {
  const ScenarioArm& arm = scenario.arm_config(patient.arm);
  if (scenario.family == ModelFamily::mechanistic) {
    const MechanisticArmLaw& law = *arm.mechanistic;
    const double u_class = rng.uniform_open01();
    const double p_cr = law.cr_probability;
    const double p_long = p_cr * law.longterm_given_cr;
    if (u_class < 1.0 - p_cr) {
      patient.responder_class = ResponderClass::non_responder;
      patient.latent_event_time =
          law.nonresponder_law->inverse_survival(rng.uniform_open01());
    } else if (u_class < 1.0 - p_long) {
      patient.responder_class = ResponderClass::short_term;
      patient.latent_event_time =
          law.shortterm_law->inverse_survival(rng.uniform_open01());
    } else {
      patient.responder_class = ResponderClass::long_term;
      patient.latent_event_time = law.cured_horizon_months;
    }
    patient.cr_flag = patient.responder_class != ResponderClass::non_responder;
  } else {
    const auto drawn = sample_event_time(*arm.survival_law, rng.uniform_open01());
    if (drawn) {
      patient.responder_class = ResponderClass::uncured;
      patient.latent_event_time = *drawn;
    } else {
      patient.responder_class = ResponderClass::cured;
      patient.latent_event_time = scenario.cured_horizon_months;
    }
    patient.cr_flag = false;
  }
  patient.dropout_time = rng.exponential(scenario.monthly_dropout(patient.arm));
}

SimulatedTrial generate_trial(const ScenarioConfig& scenario, Rng& rng) {
  Recruitment recruitment =
      generate_recruitment(scenario.recruitment, scenario.control_probability(), rng);
  SimulatedTrial trial;
  trial.allcomer_arrivals = std::move(recruitment.allcomer_arrivals);
  trial.patients.reserve(recruitment.eligible.size());
  for (const auto& [time, arm] : recruitment.eligible) {
    PatientRecord patient;
    patient.arm = arm;
    patient.rand_time = time;
    trial.patients.push_back(patient);
  }
  for (PatientRecord& patient : trial.patients) {
    sample_patient_outcome(patient, scenario, rng);
  }
  return trial;
}

TrialDataset cut_at_event_count(const SimulatedTrial& trial, int event_count,
                                double horizon_months) {
  if (event_count < 1) {
    throw std::invalid_argument("event count must be >= 1");
  }

  // Calendar times of deaths that occur on study (death before dropout);
  // whether they land before the administrative cut is decided below.
  std::vector<double> event_calendar;
  event_calendar.reserve(trial.patients.size());
  for (const PatientRecord& p : trial.patients) {
    if (p.latent_event_time <= p.dropout_time) {
      event_calendar.push_back(p.rand_time + p.latent_event_time);
    }
  }
  std::sort(event_calendar.begin(), event_calendar.end());

  TrialDataset dataset;
  dataset.cut_rule = CutRule::event_count;
  dataset.cut_parameter = event_count;
  if (static_cast<int>(event_calendar.size()) >= event_count &&
      event_calendar[event_count - 1] <= horizon_months) {
    dataset.cut_time = event_calendar[event_count - 1];
  } else {
    dataset.cut_time = horizon_months;
    dataset.under_evented = true;
  }

  for (const PatientRecord& p : trial.patients) {
    if (p.rand_time > dataset.cut_time) continue;
    PatientRecord r = p;
    const double follow_up = dataset.cut_time - p.rand_time;
    r.observed_time =
        std::min(std::min(p.latent_event_time, p.dropout_time), follow_up);
    r.event_flag =
        p.latent_event_time <= p.dropout_time && p.latent_event_time <= follow_up;
    dataset.patients.push_back(r);
  }
  return dataset;
}

InterimCut cut_at_evaluable_count(const SimulatedTrial& trial, int n_evaluable,
                                  double assessment_lag_months,
                                  double decision_lag_months) {
  if (n_evaluable < 1) {
    throw std::invalid_argument("n_evaluable must be >= 1");
  }
  if (static_cast<int>(trial.patients.size()) < n_evaluable) {
    throw std::runtime_error("fewer evaluable patients recruited than required");
  }

  InterimCut cut;
  cut.cutoff_time = trial.patients[n_evaluable - 1].rand_time;
  cut.decision_time =
      cut.cutoff_time + assessment_lag_months + decision_lag_months;
  cut.data.cut_rule = CutRule::evaluable_count;
  cut.data.cut_parameter = n_evaluable;
  cut.data.cut_time = cut.cutoff_time;
  cut.data.patients.reserve(n_evaluable);
  for (int i = 0; i < n_evaluable; ++i) {
    PatientRecord r = trial.patients[i];
    const double follow_up = cut.cutoff_time - r.rand_time;
    r.observed_time =
        std::min(std::min(r.latent_event_time, r.dropout_time), follow_up);
    r.event_flag = r.latent_event_time <= r.dropout_time &&
                   r.latent_event_time <= follow_up;
    cut.data.patients.push_back(r);
  }
  return cut;
}

}  // namespace curesim
