#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace smc {

/// Map a --jobs request onto a thread count: 0 means every available core,
/// anything else is taken literally (minimum 1).
inline int resolve_thread_count(int jobs) {
    if (jobs > 0) return jobs;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace smc
