#include "gtbound/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gtbound {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("GTBOUND_THREADS")) {
    try {
      int n = std::stoi(env);
#ifdef _OPENMP
      if (n > 0) omp_set_num_threads(n);
#else
      (void)n;
#endif
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return max_threads();
}

}  // namespace gtbound
