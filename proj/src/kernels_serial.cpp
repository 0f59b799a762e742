#include <algorithm>
#include <cmath>

#include "cantor/kernels.hpp"
#include "kernels_common.hpp"

namespace cantor::kernels::serial {

std::vector<Interval> refine_cover(const WeakContractionSystem& sys, std::span<const Interval> in) {
    const std::size_t n = in.size();
    std::vector<Interval> out(sys.size() * n);
    for (std::size_t j = 0; j < sys.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            out[j * n + i] = image(sys, j, in[i]);
    return out;
}

std::vector<ClopenSet> map_cylinders(const PrefixMap& map, std::span<const Cylinder> in) {
    std::vector<ClopenSet> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        out[i] = map.apply(in[i]);
    return out;
}

double max_over(std::size_t count, const std::function<double(std::size_t)>& f) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const double v = f(i);
        if (std::isfinite(v))
            best = std::max(best, v);
    }
    return best;
}

std::vector<std::size_t> fiber_census(std::span<const std::vector<Rational>> params,
                                      std::span<const std::uint64_t> cells, int depth) {
    std::vector<std::size_t> out(params.size());
    for (std::size_t p = 0; p < params.size(); ++p)
        out[p] = detail::cells_hit(params[p], cells, depth);
    return out;
}

} // namespace cantor::kernels::serial
