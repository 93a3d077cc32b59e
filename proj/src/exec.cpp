#include "hoprank/exec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hoprank {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

ExecMode default_exec_mode() {
#ifdef _OPENMP
  return ExecMode::Parallel;
#else
  return ExecMode::Serial;
#endif
}

} // namespace hoprank
