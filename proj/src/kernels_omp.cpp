#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cantor/kernels.hpp"
#include "kernels_common.hpp"

namespace cantor::kernels {

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace parallel {

std::vector<Interval> refine_cover(const WeakContractionSystem& sys, std::span<const Interval> in) {
    const auto n = static_cast<std::int64_t>(in.size());
    const auto m = static_cast<std::int64_t>(sys.size());
    std::vector<Interval> out(static_cast<std::size_t>(m * n));
#pragma omp parallel for schedule(static) collapse(2)
    for (std::int64_t j = 0; j < m; ++j)
        for (std::int64_t i = 0; i < n; ++i)
            out[static_cast<std::size_t>(j * n + i)] =
                image(sys, static_cast<std::size_t>(j), in[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<ClopenSet> map_cylinders(const PrefixMap& map, std::span<const Cylinder> in) {
    const auto n = static_cast<std::int64_t>(in.size());
    std::vector<ClopenSet> out(in.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = map.apply(in[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return out;
}

double max_over(std::size_t count, const std::function<double(std::size_t)>& f) {
    const auto n = static_cast<std::int64_t>(count);
    double best = -std::numeric_limits<double>::infinity();
    std::exception_ptr error;
#pragma omp parallel for schedule(static) reduction(max : best)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            const double v = f(static_cast<std::size_t>(i));
            if (std::isfinite(v))
                best = std::max(best, v);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return best;
}

std::vector<std::size_t> fiber_census(std::span<const std::vector<Rational>> params,
                                      std::span<const std::uint64_t> cells, int depth) {
    const auto n = static_cast<std::int64_t>(params.size());
    std::vector<std::size_t> out(params.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t p = 0; p < n; ++p)
        out[static_cast<std::size_t>(p)] = detail::cells_hit(params[static_cast<std::size_t>(p)], cells, depth);
    return out;
}

} // namespace parallel
} // namespace cantor::kernels
