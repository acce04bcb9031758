#pragma once

// Process-wide worker-count control and the slot-addressed parallel loop used
// by every sampled experiment. Each slot writes only to its own index and
// derives its randomness from (seed, slot), so results are byte-identical for
// any worker count — the knob only trades wall-clock time.

#include <exception>
#include <thread>
#include <vector>

#include "noiselab/common.hpp"

namespace noiselab {

// 0 means "use the hardware concurrency"; otherwise a hard worker cap.
int max_threads();
void set_max_threads(int k);  // BadRange on k < 0

// Runs fn(0..count-1) across a pool of workers; slot-addressed so results are
// independent of scheduling. The lowest-slot exception is rethrown.
template <typename F>
void parallel_slots(int count, F&& fn) {
  if (count <= 0) return;
  int cap = max_threads();
  if (cap == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    cap = int(hw ? hw : 4u);
  }
  const int workers = std::max(1, std::min(cap, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs;
  errs.resize(std::size_t(count));
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          errs[std::size_t(i)] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& ep : errs)
    if (ep) std::rethrow_exception(ep);
}

}  // namespace noiselab
