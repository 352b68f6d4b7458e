#pragma once

#include <cstddef>
#include <limits>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace puccilab::par {

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// y(i) for i in [0, n); independent iterations.
template <class F>
void for_each_index(std::size_t n, F&& f, bool parallel = true) {
#ifdef _OPENMP
    if (parallel && n > 1) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)parallel;
    for (std::size_t i = 0; i < n; ++i) f(i);
}

// Max of f(i) with smallest-index tie break. The result is independent of
// the iteration partition, so the parallel path reproduces the serial one
// exactly.
template <class F>
std::pair<double, std::size_t> max_indexed(std::size_t n, F&& f, bool parallel = true) {
    constexpr double kLowest = -std::numeric_limits<double>::infinity();
    double best = kLowest;
    std::size_t best_i = std::numeric_limits<std::size_t>::max();
#ifdef _OPENMP
    if (parallel && n > 1) {
#pragma omp parallel
        {
            double loc = kLowest;
            std::size_t loc_i = std::numeric_limits<std::size_t>::max();
#pragma omp for schedule(static) nowait
            for (long long i = 0; i < static_cast<long long>(n); ++i) {
                const double v = f(static_cast<std::size_t>(i));
                const auto idx = static_cast<std::size_t>(i);
                if (v > loc || (v == loc && idx < loc_i)) {
                    loc = v;
                    loc_i = idx;
                }
            }
#pragma omp critical
            {
                if (loc > best || (loc == best && loc_i < best_i)) {
                    best = loc;
                    best_i = loc_i;
                }
            }
        }
        return {best, best_i};
    }
#endif
    (void)parallel;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = f(i);
        if (v > best || (v == best && i < best_i)) {
            best = v;
            best_i = i;
        }
    }
    return {best, best_i};
}

}  // namespace puccilab::par
