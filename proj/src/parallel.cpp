#include "noiselab/parallel.hpp"

#include <atomic>

namespace noiselab {

namespace {
std::atomic<int> g_max_threads{0};
}

int max_threads() { return g_max_threads.load(std::memory_order_relaxed); }

void set_max_threads(int k) {
  require(k >= 0, ErrorKind::BadRange, "set_max_threads: need k >= 0 (0 = hardware)");
  g_max_threads.store(k, std::memory_order_relaxed);
}

}  // namespace noiselab
