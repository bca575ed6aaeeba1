#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cloneblame {

/// Thread count for an OpenMP region: `jobs` when positive, otherwise the
/// OpenMP default (1 without OpenMP).
inline int worker_count(int jobs) {
    if (jobs > 0) {
        return jobs;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace cloneblame
