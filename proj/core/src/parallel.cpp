#include "pprei/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include <Eigen/Core>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pprei {

std::size_t thread_count() {
#ifdef _OPENMP
  return static_cast<std::size_t>(omp_get_max_threads());
#else
  return 1;
#endif
}

void set_thread_count(std::size_t threads) {
  if (threads == 0) return;
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(threads));
#endif
  Eigen::setNbThreads(static_cast<int>(threads));
}

std::size_t configure_threads_from_env() {
  const char* raw = std::getenv("PPREI_THREADS");
  if (raw != nullptr) {
    std::size_t value = 0;
    const char* end = raw + std::strlen(raw);
    auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) set_thread_count(value);
  }
  return thread_count();
}

}  // namespace pprei
