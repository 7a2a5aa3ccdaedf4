#include "chanreg/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chanreg::parallel {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
    if (n < 1) return;
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
}

int configure_from_env() {
    if (const char* env = std::getenv("CHANNELFLOW_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0 && n < max_threads()) set_threads(n);
        } catch (const std::exception&) {
            // unparsable value: keep the OpenMP default
        }
    }
    return max_threads();
}

} // namespace chanreg::parallel
