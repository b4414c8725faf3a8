#include "disi/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace disi {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

std::string openmp_version() {
#ifdef _OPENMP
    return std::to_string(_OPENMP);
#else
    return "none";
#endif
}

void apply_thread_env() {
    if (const char* v = std::getenv("DISI_NUM_THREADS")) {
        const int n = std::atoi(v);
        if (n > 0) set_threads(n);
    }
}

}  // namespace disi
