#pragma once

#include <memory>
#include <optional>

namespace curesim {

// Parametric event-time law. Laws are immutable after construction and safe
// to share across simulation workers; sampling takes the uniform draw as an
// argument, so no RNG state lives here.
class SurvivalLaw {
 public:
  virtual ~SurvivalLaw() = default;

  // S(t) for t >= 0: starts at 1, nonincreasing, tends to cure_proportion().
  virtual double survival(double t) const = 0;

  // Density f(t); the cured mass carries no density.
  virtual double density(double t) const = 0;

  // Fraction of the population that never experiences the event.
  virtual double cure_proportion() const { return 0.0; }

  // h(t) = f(t) / S(t). Overridden where a closed form avoids 0/0 underflow.
  virtual double hazard(double t) const { return density(t) / survival(t); }

  // Solves S(t) = q for q in (cure_proportion, 1]. The default is a bracketed
  // bisection on the survival function (relative accuracy ~1e-13); laws with a
  // closed-form inverse override it.
  virtual double inverse_survival(double q) const;
};

using LawPtr = std::shared_ptr<const SurvivalLaw>;

class ExponentialLaw final : public SurvivalLaw {
 public:
  explicit ExponentialLaw(double rate);
  double survival(double t) const override;
  double density(double t) const override;
  double hazard(double) const override { return rate_; }
  double inverse_survival(double q) const override;
  double rate() const { return rate_; }
  double median() const;

 private:
  double rate_;
};

// S(t) = p + (1-p) S*(t): a point mass of never-events mixed with an
// arbitrary law for the others.
class CureMixtureLaw final : public SurvivalLaw {
 public:
  CureMixtureLaw(double cure_proportion, LawPtr uncured_law);
  double survival(double t) const override;
  double density(double t) const override;
  double cure_proportion() const override;
  double inverse_survival(double q) const override;
  const LawPtr& uncured_law() const { return uncured_; }
  double mixing_proportion() const { return cure_; }

 private:
  double cure_;
  LawPtr uncured_;
};

// Six-group response model for one arm: a patient is a non-responder with
// probability 1 - p_CR, a short-term responder with p_CR (1 - p_L), and a
// long-term ("cured") responder with p_CR p_L. Long-term responders get a
// deterministic imputed event horizon far beyond any analysis time.
struct MechanisticArmLaw {
  double cr_probability = 0.0;     // p_CR
  double longterm_given_cr = 0.0;  // p_L
  LawPtr nonresponder_law;         // S_N
  LawPtr shortterm_law;            // S_S
  double cured_horizon_months = 10000.0;

  double implied_cure_proportion() const {
    return cr_probability * longterm_given_cr;
  }
  void validate() const;  // throws std::invalid_argument on a bad field
};

// Marginal law of the mechanistic arm:
//   S(t) = p_CR (p_L + (1-p_L) S_S(t)) + (1-p_CR) S_N(t),
// a cure-style mixture with cure proportion p_CR p_L.
LawPtr mechanistic_marginal(const MechanisticArmLaw& arm);

// The uncured law implied by the mechanistic marginal:
//   S*(t) = (S(t) - p) / (1 - p) with p = p_CR p_L.
// Feeding it back into a cure mixture with proportion p reproduces the
// marginal pointwise; the transform is an identity, not a fit.
LawPtr calibrate_uncured_law(const MechanisticArmLaw& arm);

// Validated entry points mirroring the library surface; these check their
// domains and throw std::invalid_argument / std::domain_error.
double survival_at(const SurvivalLaw& law, double t);
double hazard_at(const SurvivalLaw& law, double t);
double hazard_ratio_at(const SurvivalLaw& experimental,
                       const SurvivalLaw& control, double t);
double inverse_survival(const SurvivalLaw& law, double q);

// Inverse-transform sampling: u <= cure proportion lands in the cured mass
// (std::nullopt; callers impute the horizon), otherwise inverse_survival(u).
std::optional<double> sample_event_time(const SurvivalLaw& law, double u);

// Experimental-arm CR probability implied by an odds ratio on the control CR.
double cr_odds_transform(double p_control, double odds_ratio);

// Monthly dropout probability tau with (1-tau)^12 = 1 - annual_rate.
double monthly_dropout_rate(double annual_rate);

LawPtr make_exponential(double rate);
LawPtr make_exponential_median(double median_months);
LawPtr make_cure_mixture(double cure_proportion, LawPtr uncured_law);

}  // namespace curesim
