#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel` with
// identical results; the tests compare the two and the benchmark times them.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cantor/prefix_map.hpp"
#include "cantor/quadratic_system.hpp"

namespace cantor::kernels {

// refine_cover: images of every interval under every branch, branch-major,
//   out[j * in.size() + i] = f_j(in[i]), unsorted.
// map_cylinders: canonical image of each cylinder under a prefix map.
// max_over: maximum of f(i) for i in [0, count), skipping non-finite values.
// fiber_census: for each query point, given by its parameter list in [0,1],
//   the number of dyadic cells [m/2^depth, (m+1)/2^depth] from `cells`
//   (sorted indices) containing at least one of its parameters.

namespace serial {
std::vector<Interval> refine_cover(const WeakContractionSystem& sys, std::span<const Interval> in);
std::vector<ClopenSet> map_cylinders(const PrefixMap& map, std::span<const Cylinder> in);
double max_over(std::size_t count, const std::function<double(std::size_t)>& f);
std::vector<std::size_t> fiber_census(std::span<const std::vector<Rational>> params,
                                      std::span<const std::uint64_t> cells, int depth);
} // namespace serial

namespace parallel {
std::vector<Interval> refine_cover(const WeakContractionSystem& sys, std::span<const Interval> in);
std::vector<ClopenSet> map_cylinders(const PrefixMap& map, std::span<const Cylinder> in);
double max_over(std::size_t count, const std::function<double(std::size_t)>& f);
std::vector<std::size_t> fiber_census(std::span<const std::vector<Rational>> params,
                                      std::span<const std::uint64_t> cells, int depth);
} // namespace parallel

/// Number of OpenMP threads available (1 when built without OpenMP).
int thread_count();

} // namespace cantor::kernels
