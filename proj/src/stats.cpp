#include "curesim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curesim {

namespace {

struct Observation {
  double time;
  bool event;
  bool experimental;
};

std::vector<Observation> pooled_observations(const TrialDataset& data) {
  std::vector<Observation> obs;
  obs.reserve(data.patients.size());
  for (const PatientRecord& p : data.patients) {
    obs.push_back({p.observed_time, p.event_flag, p.arm == Arm::experimental});
  }
  std::sort(obs.begin(), obs.end(),
            [](const Observation& a, const Observation& b) { return a.time < b.time; });
  return obs;
}

}  // namespace

std::optional<TestResult> try_logrank_test(const TrialDataset& data, double alpha) {
  const std::vector<Observation> obs = pooled_observations(data);
  std::int64_t at_risk = static_cast<std::int64_t>(obs.size());
  std::int64_t at_risk_exp = 0;
  for (const Observation& o : obs) at_risk_exp += o.experimental;

  double score = 0.0;     // sum over event times of (d_e n_c - d_c n_e) / n
  double variance = 0.0;  // hypergeometric variance with tie correction
  std::int64_t total_events = 0;

  std::size_t i = 0;
  while (i < obs.size()) {
    std::size_t j = i;
    std::int64_t deaths = 0, deaths_exp = 0, removed = 0, removed_exp = 0;
    while (j < obs.size() && obs[j].time == obs[i].time) {
      deaths += obs[j].event;
      deaths_exp += obs[j].event && obs[j].experimental;
      removed += 1;
      removed_exp += obs[j].experimental;
      ++j;
    }
    if (deaths > 0) {
      total_events += deaths;
      const std::int64_t at_risk_ctl = at_risk - at_risk_exp;
      const std::int64_t deaths_ctl = deaths - deaths_exp;
      // (d_e - d n_e / n) written to flip sign exactly under arm relabeling.
      score += static_cast<double>(deaths_exp * at_risk_ctl -
                                   deaths_ctl * at_risk_exp) /
               static_cast<double>(at_risk);
      if (at_risk > 1) {
        variance += static_cast<double>(deaths * (at_risk - deaths)) *
                    static_cast<double>(at_risk_exp * at_risk_ctl) /
                    (static_cast<double>(at_risk) * static_cast<double>(at_risk) *
                     static_cast<double>(at_risk - 1));
      }
    }
    at_risk -= removed;
    at_risk_exp -= removed_exp;
    i = j;
  }

  if (total_events == 0) return std::nullopt;

  TestResult result;
  if (variance > 0.0) {
    result.statistic = score / std::sqrt(variance);
    result.p_value = 2.0 * normal_cdf(-std::fabs(result.statistic));
    result.effect_estimate = std::exp(score / variance);
  } else {
    result.statistic = 0.0;
    result.p_value = 1.0;
    result.effect_estimate = 1.0;
  }
  result.reject = result.p_value < alpha;
  return result;
}

TestResult logrank_test(const TrialDataset& data, double alpha) {
  auto result = try_logrank_test(data, alpha);
  if (!result) {
    throw std::runtime_error("logrank test: no events in the pooled data");
  }
  return *result;
}

double KMCurve::survival_at(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 1.0;
  return survival[static_cast<std::size_t>(it - times.begin()) - 1];
}

double KMCurve::log_variance_at(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0.0;
  return log_var[static_cast<std::size_t>(it - times.begin()) - 1];
}

int KMCurve::at_risk_at(double t) const {
  return static_cast<int>(observed_sorted.end() -
                          std::lower_bound(observed_sorted.begin(),
                                           observed_sorted.end(), t));
}

KMCurve km_estimate(const TrialDataset& data, Arm arm) {
  std::vector<std::pair<double, bool>> obs;
  for (const PatientRecord& p : data.patients) {
    if (p.arm == arm) obs.emplace_back(p.observed_time, p.event_flag);
  }
  if (obs.empty()) {
    throw std::invalid_argument("km_estimate: arm has no patients");
  }
  std::sort(obs.begin(), obs.end());

  KMCurve curve;
  curve.n_patients = static_cast<int>(obs.size());
  curve.observed_sorted.reserve(obs.size());
  for (const auto& [t, e] : obs) curve.observed_sorted.push_back(t);

  double survival = 1.0;
  double log_var = 0.0;
  int at_risk = curve.n_patients;
  std::size_t i = 0;
  while (i < obs.size()) {
    std::size_t j = i;
    int deaths = 0, removed = 0;
    while (j < obs.size() && obs[j].first == obs[i].first) {
      deaths += obs[j].second;
      ++removed;
      ++j;
    }
    if (deaths > 0) {
      survival *= 1.0 - static_cast<double>(deaths) / at_risk;
      if (at_risk > deaths) {
        log_var += static_cast<double>(deaths) /
                   (static_cast<double>(at_risk) * (at_risk - deaths));
      }
      curve.times.push_back(obs[i].first);
      curve.at_risk.push_back(at_risk);
      curve.events.push_back(deaths);
      curve.survival.push_back(survival);
      curve.log_var.push_back(log_var);
      curve.greenwood_var.push_back(survival * survival * log_var);
    }
    at_risk -= removed;
    i = j;
  }
  return curve;
}

const char* to_string(MilestoneTransform transform) {
  switch (transform) {
    case MilestoneTransform::identity: return "identity";
    case MilestoneTransform::log_survival: return "log";
    case MilestoneTransform::cloglog: return "cloglog";
    case MilestoneTransform::arcsine_sqrt: return "arcsine";
  }
  return "?";
}

MilestoneTransform milestone_transform_from_string(const std::string& name) {
  if (name == "identity") return MilestoneTransform::identity;
  if (name == "log") return MilestoneTransform::log_survival;
  if (name == "cloglog") return MilestoneTransform::cloglog;
  if (name == "arcsine") return MilestoneTransform::arcsine_sqrt;
  throw std::invalid_argument("unknown milestone transform: " + name);
}

std::optional<TestResult> try_milestone_test(const TrialDataset& data, double t0,
                                             MilestoneTransform transform,
                                             double alpha) {
  if (t0 < 0.0) throw std::invalid_argument("milestone time must be >= 0");
  const KMCurve control = km_estimate(data, Arm::control);
  const KMCurve experimental = km_estimate(data, Arm::experimental);
  if (control.at_risk_at(t0) == 0 || experimental.at_risk_at(t0) == 0) {
    return std::nullopt;
  }

  const double s_ctl = control.survival_at(t0);
  const double s_exp = experimental.survival_at(t0);
  const double v_ctl = control.log_variance_at(t0);  // Var(log S-hat)
  const double v_exp = experimental.log_variance_at(t0);

  double difference = 0.0;
  double variance = 0.0;
  switch (transform) {
    case MilestoneTransform::identity:
      difference = s_exp - s_ctl;
      variance = s_exp * s_exp * v_exp + s_ctl * s_ctl * v_ctl;
      break;
    case MilestoneTransform::log_survival:
      if (s_exp <= 0.0 || s_ctl <= 0.0) return std::nullopt;
      difference = std::log(s_exp) - std::log(s_ctl);
      variance = v_exp + v_ctl;
      break;
    case MilestoneTransform::cloglog: {
      if (s_exp <= 0.0 || s_exp >= 1.0 || s_ctl <= 0.0 || s_ctl >= 1.0) {
        return std::nullopt;
      }
      const double log_exp = std::log(s_exp);
      const double log_ctl = std::log(s_ctl);
      difference = std::log(-log_exp) - std::log(-log_ctl);
      variance = v_exp / (log_exp * log_exp) + v_ctl / (log_ctl * log_ctl);
      break;
    }
    case MilestoneTransform::arcsine_sqrt:
      if (s_exp <= 0.0 || s_exp >= 1.0 || s_ctl <= 0.0 || s_ctl >= 1.0) {
        return std::nullopt;
      }
      difference = std::asin(std::sqrt(s_exp)) - std::asin(std::sqrt(s_ctl));
      variance = s_exp * v_exp / (4.0 * (1.0 - s_exp)) +
                 s_ctl * v_ctl / (4.0 * (1.0 - s_ctl));
      break;
  }

  TestResult result;
  result.effect_estimate = s_exp - s_ctl;
  if (variance > 0.0) {
    result.statistic = difference / std::sqrt(variance);
    result.p_value = 2.0 * normal_cdf(-std::fabs(result.statistic));
  } else if (difference == 0.0) {
    result.statistic = 0.0;
    result.p_value = 1.0;
  } else {
    return std::nullopt;
  }
  result.reject = result.p_value < alpha;
  return result;
}

TestResult milestone_test(const TrialDataset& data, double t0,
                          MilestoneTransform transform, double alpha) {
  auto result = try_milestone_test(data, t0, transform, alpha);
  if (!result) {
    throw std::runtime_error("milestone not estimable at the requested time");
  }
  return *result;
}

OddsRatioEstimate cr_odds_ratio(const TrialDataset& data) {
  OddsRatioEstimate out;
  for (const PatientRecord& p : data.patients) {
    if (p.arm == Arm::control) {
      ++out.control_n;
      out.control_cr += p.cr_flag;
    } else {
      ++out.experimental_n;
      out.experimental_cr += p.cr_flag;
    }
  }
  if (out.control_n == 0 || out.experimental_n == 0) {
    throw std::runtime_error("cr_odds_ratio: an arm has no patients");
  }
  double a = out.experimental_cr;
  double b = out.experimental_n - out.experimental_cr;
  double c = out.control_cr;
  double d = out.control_n - out.control_cr;
  if (a == 0.0 || b == 0.0 || c == 0.0 || d == 0.0) {
    a += 0.5;
    b += 0.5;
    c += 0.5;
    d += 0.5;
    out.continuity_corrected = true;
  }
  out.estimate = (a / b) / (c / d);
  return out;
}

int schoenfeld_events(double alpha, double power, double hazard_ratio,
                      double allocation_ratio) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(power > 0.0 && power < 1.0)) {
    throw std::invalid_argument("alpha and power must lie in (0,1)");
  }
  if (!(hazard_ratio > 0.0) || hazard_ratio == 1.0) {
    throw std::invalid_argument("hazard ratio must be positive and != 1");
  }
  if (!(allocation_ratio > 0.0)) {
    throw std::invalid_argument("allocation ratio must be positive");
  }
  const double pi = allocation_ratio / (1.0 + allocation_ratio);
  const double z = normal_quantile(1.0 - alpha / 2.0) + normal_quantile(power);
  const double log_hr = std::log(hazard_ratio);
  const double required = z * z / (pi * (1.0 - pi) * log_hr * log_hr);
  return static_cast<int>(std::ceil(required - 1e-9));
}

double minimal_detectable_hr(int events, double allocation_ratio, double alpha) {
  if (events < 1) throw std::invalid_argument("event count must be >= 1");
  const double pi = allocation_ratio / (1.0 + allocation_ratio);
  return std::exp(-normal_quantile(1.0 - alpha / 2.0) /
                  std::sqrt(events * pi * (1.0 - pi)));
}

// AS 241 (PPND16).
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
  }
  const double q = p - 0.5;
  double r;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    value =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double sample_quantile(std::vector<double> values, double p) {
  if (values.empty()) {
    throw std::invalid_argument("sample_quantile: empty sample");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("sample_quantile: p must lie in [0,1]");
  }
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace curesim
