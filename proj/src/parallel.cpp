#include "charsum/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace charsum {

int worker_count() {
  const char* env = std::getenv("CHARSUM_THREADS");
  if (env) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

void configure_threads() { omp_set_num_threads(worker_count()); }

}  // namespace charsum
