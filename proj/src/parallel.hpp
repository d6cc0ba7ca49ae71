#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "curesim/rng.hpp"

namespace curesim::detail {

// Runs fn(trial_index, rng) for every index in [0, trials) with one RNG
// sub-stream per index. Workers grab blocks from an atomic cursor; since
// every index owns its stream and its output slot, results are identical
// for any thread count or schedule.
template <class Fn>
void for_each_trial(int trials, int threads, std::uint64_t seed, Fn&& fn) {
  if (threads <= 1) {
    for (int i = 0; i < trials; ++i) {
      Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
      fn(i, rng);
    }
    return;
  }

  constexpr int kBlock = 16;
  std::atomic<int> cursor{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const int begin = cursor.fetch_add(kBlock, std::memory_order_relaxed);
      if (begin >= trials) break;
      const int end = std::min(begin + kBlock, trials);
      try {
        for (int i = begin; i < end; ++i) {
          Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
          fn(i, rng);
        }
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();  // join
  if (error) std::rethrow_exception(error);
}

}  // namespace curesim::detail
