#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "cantor/code_space.hpp"

namespace cantor::kernels::detail {

// Number of distinct cells in `cells` whose closed dyadic interval contains
// one of the parameters.
inline std::size_t cells_hit(const std::vector<Rational>& params, std::span<const std::uint64_t> cells, int depth) {
    using boost::multiprecision::cpp_int;
    const cpp_int scale = cpp_int(1) << depth;
    const std::uint64_t last = (std::uint64_t{1} << depth) - 1;
    std::vector<std::uint64_t> hit;
    for (const auto& t : params) {
        const Rational x = t * Rational(scale);
        const cpp_int m = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
        const auto cell = static_cast<std::uint64_t>(m);
        if (cell <= last)
            hit.push_back(cell);
        if (cell >= 1 && Rational(m) == x)
            hit.push_back(cell - 1);
    }
    std::sort(hit.begin(), hit.end());
    hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
    return static_cast<std::size_t>(std::count_if(hit.begin(), hit.end(), [&](std::uint64_t c) {
        return std::binary_search(cells.begin(), cells.end(), c);
    }));
}

} // namespace cantor::kernels::detail
