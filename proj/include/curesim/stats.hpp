#pragma once

#include <optional>
#include <vector>

#include "curesim/trial.hpp"

namespace curesim {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject = false;
  // Hazard-ratio scale for the logrank test, survival-difference scale for
  // the milestone test (experimental minus control in both cases).
  double effect_estimate = 1.0;
};

// Two-sided unweighted logrank test of equal hazards. The statistic is the
// standardized experimental-arm O-E sum over pooled distinct event times with
// hypergeometric variance; ties are grouped at identical observed times.
// Throws if the pooled data carry no events.
TestResult logrank_test(const TrialDataset& data, double alpha);
std::optional<TestResult> try_logrank_test(const TrialDataset& data, double alpha);

// Product-limit estimate for one arm with Greenwood variance.
struct KMCurve {
  std::vector<double> times;          // distinct event times
  std::vector<int> at_risk;
  std::vector<int> events;
  std::vector<double> survival;
  std::vector<double> greenwood_var;  // variance of the survival estimate
  std::vector<double> log_var;        // cumulative sum d / (n (n - d))
  std::vector<double> observed_sorted;  // all observation times in the arm
  int n_patients = 0;

  double survival_at(double t) const;
  double log_variance_at(double t) const;  // Var(log S-hat) up to t
  int at_risk_at(double t) const;          // observations >= t
};

KMCurve km_estimate(const TrialDataset& data, Arm arm);

enum class MilestoneTransform : unsigned char {
  identity,
  log_survival,
  cloglog,
  arcsine_sqrt,
};

const char* to_string(MilestoneTransform transform);
MilestoneTransform milestone_transform_from_string(const std::string& name);

// Fixed-time comparison of the two arms' survival at t0 on a transformed
// scale, with delta-method variance from Greenwood. Returns nullopt when the
// milestone is not estimable (an arm has nobody at risk at t0, or the
// transform is undefined at the estimate).
std::optional<TestResult> try_milestone_test(const TrialDataset& data, double t0,
                                             MilestoneTransform transform,
                                             double alpha);
TestResult milestone_test(const TrialDataset& data, double t0,
                          MilestoneTransform transform, double alpha);

struct OddsRatioEstimate {
  double estimate = 1.0;
  bool continuity_corrected = false;  // 0.5 added to every cell (zero cell)
  int control_n = 0;
  int control_cr = 0;
  int experimental_n = 0;
  int experimental_cr = 0;
};

// Sample CR odds ratio (experimental over control) from an interim dataset.
OddsRatioEstimate cr_odds_ratio(const TrialDataset& data);

// Smallest event count giving the logrank test the target power against a
// proportional-hazards alternative.
int schoenfeld_events(double alpha, double power, double hazard_ratio,
                      double allocation_ratio);

// Hazard ratio at which the two-sided logrank test on d events is borderline
// significant: exp(-z_{1-alpha/2} / sqrt(d pi (1-pi))).
double minimal_detectable_hr(int events, double allocation_ratio, double alpha);

// Standard normal quantile (Wichura's AS 241, |error| < 1e-9) and CDF.
double normal_quantile(double p);
double normal_cdf(double x);

// Type-7 quantile of a sample (linear interpolation); sorts a copy.
double sample_quantile(std::vector<double> values, double p);

}  // namespace curesim
