#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tss3::detail {

// Runs fn(0) .. fn(n-1) over independent work items. threads == 1 executes
// the plain serial loop (the reference path the tests compare against);
// otherwise the items go to an OpenMP parallel-for, with threads == 0
// leaving the pool size to the runtime. Exceptions are captured and the
// first one rethrown after the loop joins.
template <typename Fn>
void run_indexed(std::size_t n, int threads, Fn&& fn) {
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr error;
    const int pool = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(pool)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
#else
    for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace tss3::detail
