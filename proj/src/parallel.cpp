#include "fpt/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fpt {

int max_threads() {
  int fallback = 1;
#ifdef _OPENMP
  fallback = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("FPT_ORDER_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) return cap;
    } catch (const std::exception&) {
      // malformed values fall back to the OpenMP default
    }
  }
  return fallback;
}

}  // namespace fpt
