#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curesim/scenario.hpp"
#include "curesim/stats.hpp"

namespace curesim {

struct PowerEstimate {
  int events = 0;
  double power = 0.0;
  double mc_se = 0.0;
  double t25 = 0.0, t50 = 0.0, t75 = 0.0;  // calendar time of the cut
  double under_evented_fraction = 0.0;
};

struct PowerGridResult {
  std::vector<PowerEstimate> grid;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string scenario_id;
};

struct MinEventsResult {
  bool reached = false;
  int events = 0;  // smallest d meeting the target, or d_hi when unreached
  PowerGridResult grid;
};

struct MilestonePowerEstimate {
  double t0 = 0.0;
  double power = 0.0;
  double mc_se = 0.0;
  double not_estimable_fraction = 0.0;
};

// Simulates `trials` trials, cuts each at d events and runs the logrank test
// at the scenario alpha. Under-evented trials count as non-rejections and are
// reported separately. Identical (scenario, d, trials, seed) inputs give
// bit-identical results for any thread count.
PowerEstimate estimate_power(const ScenarioConfig& scenario, int events,
                             int trials, std::uint64_t seed, int threads = 1);

// Scans d upward over [d_lo, d_hi] on common random numbers (the same master
// seed regenerates the same trials at every d) and returns the smallest d
// whose estimated power reaches the target. The grid holds every evaluated d.
MinEventsResult find_min_events(const ScenarioConfig& scenario,
                                double target_power, int d_lo, int d_hi,
                                int trials, std::uint64_t seed, int threads = 1);

// Rejection fraction of the fixed-time survival comparison at each t0, on
// trials cut at d events. Trials where the milestone is not estimable count
// as non-rejections and are tallied in not_estimable_fraction.
std::vector<MilestonePowerEstimate> estimate_milestone_power(
    const ScenarioConfig& scenario, int events, std::span<const double> t0s,
    MilestoneTransform transform, int trials, std::uint64_t seed,
    int threads = 1);

}  // namespace curesim
