#include "curesim/design.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "curesim/trial.hpp"
#include "parallel.hpp"

namespace curesim {

namespace {

double binomial_se(double p_hat, int trials) {
  return std::sqrt(p_hat * (1.0 - p_hat) / trials);
}

}  // namespace

PowerEstimate estimate_power(const ScenarioConfig& scenario, int events,
                             int trials, std::uint64_t seed, int threads) {
  scenario.validate();
  if (events < 1) throw std::invalid_argument("event count must be >= 1");
  if (trials < 1) throw std::invalid_argument("trial count must be >= 1");

  std::vector<unsigned char> rejected(trials, 0);
  std::vector<unsigned char> under(trials, 0);
  std::vector<double> cut_times(trials, 0.0);

  detail::for_each_trial(trials, threads, seed, [&](int i, Rng& rng) {
    const SimulatedTrial trial = generate_trial(scenario, rng);
    const TrialDataset dataset =
        cut_at_event_count(trial, events, scenario.horizon_months);
    cut_times[i] = dataset.cut_time;
    under[i] = dataset.under_evented;
    if (!dataset.under_evented) {
      const auto result = try_logrank_test(dataset, scenario.alpha);
      rejected[i] = result && result->reject;
    }
  });

  PowerEstimate estimate;
  estimate.events = events;
  const int n_rejected = std::accumulate(rejected.begin(), rejected.end(), 0);
  const int n_under = std::accumulate(under.begin(), under.end(), 0);
  estimate.power = static_cast<double>(n_rejected) / trials;
  estimate.mc_se = binomial_se(estimate.power, trials);
  estimate.t25 = sample_quantile(cut_times, 0.25);
  estimate.t50 = sample_quantile(cut_times, 0.50);
  estimate.t75 = sample_quantile(cut_times, 0.75);
  estimate.under_evented_fraction = static_cast<double>(n_under) / trials;
  return estimate;
}

MinEventsResult find_min_events(const ScenarioConfig& scenario,
                                double target_power, int d_lo, int d_hi,
                                int trials, std::uint64_t seed, int threads) {
  if (!(target_power > 0.0 && target_power < 1.0)) {
    throw std::invalid_argument("target power must lie in (0,1)");
  }
  if (d_lo < 1 || d_lo > d_hi) {
    throw std::invalid_argument("need 1 <= d_lo <= d_hi");
  }

  MinEventsResult result;
  result.grid.trials = trials;
  result.grid.seed = seed;
  result.grid.scenario_id = scenario.id;
  for (int d = d_lo; d <= d_hi; ++d) {
    const PowerEstimate estimate =
        estimate_power(scenario, d, trials, seed, threads);
    result.grid.grid.push_back(estimate);
    if (estimate.power >= target_power) {
      result.reached = true;
      result.events = d;
      return result;
    }
  }
  result.reached = false;
  result.events = d_hi;
  return result;
}

std::vector<MilestonePowerEstimate> estimate_milestone_power(
    const ScenarioConfig& scenario, int events, std::span<const double> t0s,
    MilestoneTransform transform, int trials, std::uint64_t seed, int threads) {
  scenario.validate();
  if (t0s.empty()) throw std::invalid_argument("no milestone times given");

  const std::size_t n_times = t0s.size();
  std::vector<unsigned char> rejected(n_times * trials, 0);
  std::vector<unsigned char> missing(n_times * trials, 0);

  detail::for_each_trial(trials, threads, seed, [&](int i, Rng& rng) {
    const SimulatedTrial trial = generate_trial(scenario, rng);
    const TrialDataset dataset =
        cut_at_event_count(trial, events, scenario.horizon_months);
    for (std::size_t k = 0; k < n_times; ++k) {
      const auto result =
          try_milestone_test(dataset, t0s[k], transform, scenario.alpha);
      if (result) {
        rejected[k * trials + i] = result->reject;
      } else {
        missing[k * trials + i] = 1;
      }
    }
  });

  std::vector<MilestonePowerEstimate> out(n_times);
  for (std::size_t k = 0; k < n_times; ++k) {
    int n_rejected = 0, n_missing = 0;
    for (int i = 0; i < trials; ++i) {
      n_rejected += rejected[k * trials + i];
      n_missing += missing[k * trials + i];
    }
    out[k].t0 = t0s[k];
    out[k].power = static_cast<double>(n_rejected) / trials;
    out[k].mc_se = binomial_se(out[k].power, trials);
    out[k].not_estimable_fraction = static_cast<double>(n_missing) / trials;
  }
  return out;
}

}  // namespace curesim
