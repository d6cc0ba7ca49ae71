#include "curesim/survival.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace curesim {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0 && std::isfinite(p); }

}  // namespace

double SurvivalLaw::inverse_survival(double q) const {
  if (q >= 1.0) return 0.0;
  // Bracket [lo, hi] with S(lo) >= q >= S(hi), then bisect.
  double lo = 0.0;
  double hi = 1.0;
  int expand = 0;
  while (survival(hi) > q) {
    lo = hi;
    hi *= 2.0;
    if (++expand > 1100) {
      throw std::runtime_error("inverse_survival: failed to bracket quantile");
    }
  }
  for (int i = 0; i < 300 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) > q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ExponentialLaw::ExponentialLaw(double rate) : rate_(rate) {
  require(std::isfinite(rate) && rate > 0.0,
          "exponential rate must be positive and finite");
}

double ExponentialLaw::survival(double t) const { return std::exp(-rate_ * t); }

double ExponentialLaw::density(double t) const {
  return rate_ * std::exp(-rate_ * t);
}

double ExponentialLaw::inverse_survival(double q) const {
  return -std::log(q) / rate_;
}

double ExponentialLaw::median() const { return std::log(2.0) / rate_; }

CureMixtureLaw::CureMixtureLaw(double cure_proportion, LawPtr uncured_law)
    : cure_(cure_proportion), uncured_(std::move(uncured_law)) {
  require(cure_ >= 0.0 && cure_ < 1.0, "cure proportion must lie in [0,1)");
  require(uncured_ != nullptr, "cure mixture requires an uncured law");
}

double CureMixtureLaw::survival(double t) const {
  return cure_ + (1.0 - cure_) * uncured_->survival(t);
}

double CureMixtureLaw::density(double t) const {
  return (1.0 - cure_) * uncured_->density(t);
}

double CureMixtureLaw::cure_proportion() const {
  return cure_ + (1.0 - cure_) * uncured_->cure_proportion();
}

double CureMixtureLaw::inverse_survival(double q) const {
  return uncured_->inverse_survival((q - cure_) / (1.0 - cure_));
}

void MechanisticArmLaw::validate() const {
  require(is_probability(cr_probability), "p_CR must lie in [0,1]");
  require(is_probability(longterm_given_cr), "p_L must lie in [0,1]");
  require(nonresponder_law != nullptr, "non-responder law missing");
  require(shortterm_law != nullptr, "short-term responder law missing");
  require(cured_horizon_months > 0.0, "cured horizon must be positive");
}

namespace {

class MechanisticMarginalLaw final : public SurvivalLaw {
 public:
  explicit MechanisticMarginalLaw(MechanisticArmLaw arm) : arm_(std::move(arm)) {
    arm_.validate();
  }

  double survival(double t) const override {
    const double p_cr = arm_.cr_probability;
    const double p_l = arm_.longterm_given_cr;
    return p_cr * (p_l + (1.0 - p_l) * arm_.shortterm_law->survival(t)) +
           (1.0 - p_cr) * arm_.nonresponder_law->survival(t);
  }

  double density(double t) const override {
    const double p_cr = arm_.cr_probability;
    const double p_l = arm_.longterm_given_cr;
    return p_cr * (1.0 - p_l) * arm_.shortterm_law->density(t) +
           (1.0 - p_cr) * arm_.nonresponder_law->density(t);
  }

  double cure_proportion() const override {
    return arm_.implied_cure_proportion();
  }

 private:
  MechanisticArmLaw arm_;
};

// S*(t) = (S(t) - p) / (1 - p) evaluated through the marginal; exact by
// construction, so reconstructing the mixture reproduces the marginal.
class CalibratedUncuredLaw final : public SurvivalLaw {
 public:
  explicit CalibratedUncuredLaw(LawPtr marginal)
      : marginal_(std::move(marginal)), cure_(marginal_->cure_proportion()) {
    if (cure_ >= 1.0) {
      throw std::invalid_argument("calibration requires cure proportion < 1");
    }
  }

  double survival(double t) const override {
    const double s = (marginal_->survival(t) - cure_) / (1.0 - cure_);
    return std::max(0.0, s);
  }

  double density(double t) const override {
    return marginal_->density(t) / (1.0 - cure_);
  }

  double inverse_survival(double q) const override {
    return marginal_->inverse_survival(cure_ + (1.0 - cure_) * q);
  }

 private:
  LawPtr marginal_;
  double cure_;
};

}  // namespace

LawPtr mechanistic_marginal(const MechanisticArmLaw& arm) {
  return std::make_shared<MechanisticMarginalLaw>(arm);
}

LawPtr calibrate_uncured_law(const MechanisticArmLaw& arm) {
  return std::make_shared<CalibratedUncuredLaw>(mechanistic_marginal(arm));
}

double survival_at(const SurvivalLaw& law, double t) {
  require(t >= 0.0 && !std::isnan(t), "survival_at: t must be nonnegative");
  return law.survival(t);
}

double hazard_at(const SurvivalLaw& law, double t) {
  require(t >= 0.0 && !std::isnan(t), "hazard_at: t must be nonnegative");
  if (law.survival(t) <= 0.0) {
    throw std::domain_error("hazard_at: S(t) = 0, hazard undefined");
  }
  return law.hazard(t);
}

double hazard_ratio_at(const SurvivalLaw& experimental,
                       const SurvivalLaw& control, double t) {
  const double denominator = hazard_at(control, t);
  if (denominator <= 0.0) {
    throw std::domain_error("hazard_ratio_at: control hazard is zero");
  }
  return hazard_at(experimental, t) / denominator;
}

double inverse_survival(const SurvivalLaw& law, double q) {
  require(q <= 1.0 && !std::isnan(q), "inverse_survival: q must not exceed 1");
  if (q <= law.cure_proportion()) {
    throw std::domain_error(
        "inverse_survival: q lies in the cured mass; no finite quantile");
  }
  return law.inverse_survival(q);
}

std::optional<double> sample_event_time(const SurvivalLaw& law, double u) {
  require(u > 0.0 && u < 1.0, "sample_event_time: u must lie in (0,1)");
  if (u <= law.cure_proportion()) return std::nullopt;
  return law.inverse_survival(u);
}

double cr_odds_transform(double p_control, double odds_ratio) {
  require(p_control > 0.0 && p_control < 1.0,
          "cr_odds_transform: control CR probability must lie in (0,1)");
  require(odds_ratio > 0.0 && std::isfinite(odds_ratio),
          "cr_odds_transform: odds ratio must be positive");
  const double odds = p_control / (1.0 - p_control);
  return odds_ratio * odds / (1.0 + odds_ratio * odds);
}

double monthly_dropout_rate(double annual_rate) {
  require(annual_rate >= 0.0 && annual_rate < 1.0,
          "monthly_dropout_rate: annual rate must lie in [0,1)");
  return 1.0 - std::pow(1.0 - annual_rate, 1.0 / 12.0);
}

LawPtr make_exponential(double rate) {
  return std::make_shared<ExponentialLaw>(rate);
}

LawPtr make_exponential_median(double median_months) {
  require(median_months > 0.0 && std::isfinite(median_months),
          "median must be positive and finite");
  return make_exponential(std::log(2.0) / median_months);
}

LawPtr make_cure_mixture(double cure_proportion, LawPtr uncured_law) {
  return std::make_shared<CureMixtureLaw>(cure_proportion,
                                          std::move(uncured_law));
}

}  // namespace curesim
