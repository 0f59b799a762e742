#include "doctest.h"

#include <cmath>
#include <random>

#include "cantor/dendrite.hpp"
#include "cantor/kernels.hpp"
#include "test_support.hpp"

using namespace cantor;

TEST_CASE("refine_cover: serial and parallel agree bit for bit") {
    for (double mu : {4.5, 5.0, 9.0}) {
        const auto sys = inverse_branches({mu});
        for (int n = 0; n <= 12; ++n) {
            const auto in = invariant_cover(sys, n).intervals;
            const auto a = kernels::serial::refine_cover(sys, in);
            const auto b = kernels::parallel::refine_cover(sys, in);
            REQUIRE(a.size() == 2 * in.size());
            CHECK(a == b);
            // Branch-major layout.
            for (std::size_t i = 0; i < in.size(); i += 37)
                CHECK(a[in.size() + i] == image(sys, 1, in[i]));
        }
    }
}

TEST_CASE("map_cylinders: serial and parallel agree") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 20; ++i) {
        std::vector<Cylinder> cs;
        for (int k = 0; k < 3; ++k)
            cs.emplace_back(test::random_word(rng, 1 + rng() % 4));
        const ClopenSet target(cs);
        const auto h = recode_homeomorphism(target);
        const auto in = ClopenSet::full().refine(8);
        const auto a = kernels::serial::map_cylinders(h.forward, in);
        const auto b = kernels::parallel::map_cylinders(h.forward, in);
        CHECK(a == b);
        for (std::size_t k = 0; k < in.size(); k += 17)
            CHECK(a[k] == h.forward.apply(in[k]));
    }
}

TEST_CASE("map_cylinders propagates errors") {
    const PrefixMap p(std::vector<PrefixRule>{{"0", "1"}});
    const std::vector<Cylinder> in{Cylinder("00"), Cylinder("10")};
    CHECK_THROWS_AS(kernels::serial::map_cylinders(p, in), SpaceError);
    CHECK_THROWS_AS(kernels::parallel::map_cylinders(p, in), SpaceError);
}

TEST_CASE("max_over skips non-finite values") {
    const std::function<double(std::size_t)> f = [](std::size_t i) {
        if (i % 5 == 0)
            return std::nan("");
        return std::sin(static_cast<double>(i));
    };
    double expected = -INFINITY;
    for (std::size_t i = 0; i < 5000; ++i)
        if (i % 5 != 0)
            expected = std::max(expected, std::sin(static_cast<double>(i)));
    CHECK(kernels::serial::max_over(5000, f) == expected);
    CHECK(kernels::parallel::max_over(5000, f) == expected);
    CHECK(kernels::parallel::max_over(0, f) == kernels::serial::max_over(0, f));
}

TEST_CASE("max_over propagates exceptions") {
    const std::function<double(std::size_t)> f = [](std::size_t i) -> double {
        if (i == 77)
            throw std::runtime_error("boom");
        return 0.0;
    };
    CHECK_THROWS_AS(kernels::serial::max_over(100, f), std::runtime_error);
    CHECK_THROWS_AS(kernels::parallel::max_over(100, f), std::runtime_error);
}

TEST_CASE("fiber_census matches a direct count") {
    const DendriteGraph g(3);
    const int depth = 8;
    std::vector<std::vector<Rational>> params;
    for (const auto& p : vertices_and_midpoints(g))
        params.push_back(tour_parameters(g, p));
    std::mt19937_64 rng(52);
    std::vector<std::uint64_t> cells;
    for (std::uint64_t m = 0; m < (1U << depth); ++m)
        if (rng() % 3 != 0)
            cells.push_back(m);

    const auto a = kernels::serial::fiber_census(params, cells, depth);
    const auto b = kernels::parallel::fiber_census(params, cells, depth);
    CHECK(a == b);
    // Oracle: a cell [m, m+1]/2^d counts when any parameter lies in it.
    for (std::size_t i = 0; i < params.size(); ++i) {
        std::size_t count = 0;
        for (auto m : cells) {
            const Rational lo(static_cast<long long>(m), 1LL << depth);
            const Rational hi(static_cast<long long>(m + 1), 1LL << depth);
            for (const auto& t : params[i])
                if (lo <= t && t <= hi) {
                    ++count;
                    break;
                }
        }
        CHECK(a[i] == count);
    }
}

TEST_CASE("thread count is positive") {
    CHECK(kernels::thread_count() >= 1);
}
