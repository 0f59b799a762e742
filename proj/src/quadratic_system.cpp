#include "cantor/quadratic_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cantor/kernels.hpp"

namespace cantor {

double logistic(QuadraticParams p, double x) {
    return p.mu * x * (1.0 - x);
}

double contraction_threshold_mu() {
    return 2.0 + 2.0 * std::sqrt(2.0);
}

// ---------------------------------------------------------------- system

WeakContractionSystem::WeakContractionSystem(std::vector<Branch> branches, std::vector<double> moduli,
                                             std::vector<double> fixed_points)
    : branches_(std::move(branches)), moduli_(std::move(moduli)), fixed_points_(std::move(fixed_points)) {
    if (branches_.size() < 2)
        throw SystemError("a weak-contraction system needs at least two maps");
    if (moduli_.size() != branches_.size())
        throw SystemError("one modulus per branch required");
    for (double a : moduli_)
        if (!(a > 0.0))
            throw SystemError("modulus infimum must be positive");
    std::sort(fixed_points_.begin(), fixed_points_.end());
}

double WeakContractionSystem::max_modulus() const {
    return *std::max_element(moduli_.begin(), moduli_.end());
}

double WeakContractionSystem::branch_fixed_point(std::size_t j) const {
    double y = 0.5;
    for (int it = 0; it < 10000; ++it) {
        const double next = apply(j, y);
        const bool done = std::abs(next - y) <= std::numeric_limits<double>::epsilon();
        y = next;
        if (done)
            break;
    }
    // Prefer a recorded closed-form fixed point when the iteration lands on it.
    for (double z : fixed_points_)
        if (std::abs(z - y) < 1e-9 && std::abs(apply(j, z) - z) <= kIdentityTolerance)
            return z;
    return y;
}

WeakContractionSystem inverse_branches(QuadraticParams p) {
    const double mu = p.mu;
    if (!(mu > 4.0))
        throw SystemError("branch domain does not cover [0,1]");

    auto root = [mu](double y) { return std::sqrt(1.0 - 4.0 * y / mu); };
    auto droot = [mu, root](double y) { return 1.0 / (mu * root(y)); };

    std::vector<Branch> branches{
        Branch{[root](double y) { return 0.5 * (1.0 - root(y)); }, droot},
        Branch{[root](double y) { return 0.5 * (1.0 + root(y)); },
               [droot](double y) { return -droot(y); }},
    };
    // sup |f_j'| on [0,1] is reached at y = 1.
    const double alpha = 1.0 / std::sqrt(mu * (mu - 4.0));
    return WeakContractionSystem(std::move(branches), {alpha, alpha}, {0.0, 1.0 - 1.0 / mu});
}

StatementReport verify_statement_conditions(const WeakContractionSystem& sys, std::size_t grid) {
    StatementReport rep;
    grid = std::max<std::size_t>(grid, 2);

    rep.injective = true;
    for (std::size_t j = 0; j < sys.size(); ++j) {
        const Branch& b = sys.branch(j);
        const double d0 = b.derivative(0.0);
        const int sign = d0 > 0 ? 1 : (d0 < 0 ? -1 : 0);
        if (sign == 0)
            rep.injective = false;
        double prev = b.map(0.0);
        for (std::size_t i = 0; i <= grid; ++i) {
            const double y = static_cast<double>(i) / static_cast<double>(grid);
            const double d = b.derivative(y);
            rep.max_sampled_derivative = std::max(rep.max_sampled_derivative, std::abs(d));
            if ((d > 0 ? 1 : (d < 0 ? -1 : 0)) != sign)
                rep.injective = false;
            if (i > 0) {
                const double v = b.map(y);
                if ((v - prev) * sign <= 0.0)
                    rep.injective = false;
                prev = v;
            }
        }
    }

    // Union of fixed points with near-duplicates merged.
    for (double z : sys.fixed_points())
        if (rep.fixed_points.empty() || std::abs(z - rep.fixed_points.back()) > kIdentityTolerance)
            rep.fixed_points.push_back(z);
    rep.fixed_points_not_singleton = rep.fixed_points.size() >= 2;

    for (std::size_t j = 0; j < sys.size(); ++j)
        rep.modulus_sum += sys.modulus_infimum(j);
    rep.modulus_sum_below_one = rep.modulus_sum < 1.0;
    rep.modulus_consistent = rep.max_sampled_derivative <= sys.max_modulus() + kIdentityTolerance;
    return rep;
}

// ---------------------------------------------------------------- covers

Interval image(const WeakContractionSystem& sys, std::size_t j, Interval in) {
    const double a = sys.apply(j, in.lo);
    const double b = sys.apply(j, in.hi);
    return a <= b ? Interval{a, b} : Interval{b, a};
}

namespace {

IntervalCover sorted_cover(int depth, std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    return IntervalCover{depth, std::move(v)};
}

void require_open_set_condition(const WeakContractionSystem& sys) {
    std::vector<Interval> top;
    for (std::size_t j = 0; j < sys.size(); ++j)
        top.push_back(image(sys, j, {0.0, 1.0}));
    std::sort(top.begin(), top.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    for (std::size_t i = 1; i < top.size(); ++i)
        if (top[i].lo <= top[i - 1].hi)
            throw SystemError("open set condition violated");
}

} // namespace

IntervalCover apply_system(const WeakContractionSystem& sys, const IntervalCover& cover) {
    return sorted_cover(cover.depth + 1, kernels::parallel::refine_cover(sys, cover.intervals));
}

IntervalCover invariant_cover(const WeakContractionSystem& sys, int n) {
    if (n < 0)
        throw SystemError("depth must be non-negative");
    require_open_set_condition(sys);
    IntervalCover cover{0, {{0.0, 1.0}}};
    for (int k = 0; k < n; ++k)
        cover = apply_system(sys, cover);
    return cover;
}

Interval word_interval(const WeakContractionSystem& sys, const Word& w) {
    Interval iv{0.0, 1.0};
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        iv = image(sys, static_cast<std::size_t>(*it - '0'), iv);
    return iv;
}

bool nested_in(const IntervalCover& inner, const IntervalCover& outer, double tol) {
    const auto& o = outer.intervals;
    for (const auto& iv : inner.intervals) {
        auto it = std::upper_bound(o.begin(), o.end(), iv.lo + tol,
                                   [](double x, const Interval& c) { return x < c.lo; });
        if (it == o.begin())
            return false;
        --it;
        if (iv.lo < it->lo - tol || iv.hi > it->hi + tol)
            return false;
    }
    return true;
}

ItineraryPoint itinerary_point(const WeakContractionSystem& sys, const Address& a, int n) {
    if (n < 1)
        throw SystemError("itinerary depth must be at least 1");
    const Interval iv = word_interval(sys, a.head(static_cast<std::size_t>(n)));
    return {0.5 * (iv.lo + iv.hi), 0.5 * (iv.hi - iv.lo)};
}

double itinerary_limit(const WeakContractionSystem& sys, const Address& a) {
    double y = sys.branch_fixed_point(static_cast<std::size_t>(a.tail() - '0'));
    const Word& p = a.prefix();
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        y = sys.apply(static_cast<std::size_t>(*it - '0'), y);
    return y;
}

// ---------------------------------------------------------------- Hausdorff

namespace {

// Distance from x to the nearest interval of a sorted disjoint list.
double distance_to(std::span<const Interval> b, double x) {
    auto it = std::upper_bound(b.begin(), b.end(), x, [](double v, const Interval& c) { return v < c.lo; });
    double best = std::numeric_limits<double>::infinity();
    if (it != b.end())
        best = it->lo - x;
    if (it != b.begin()) {
        --it;
        best = std::min(best, x <= it->hi ? 0.0 : x - it->hi);
    }
    return best;
}

bool inside(std::span<const Interval> a, double x) {
    return distance_to(a, x) == 0.0;
}

// sup over a of dist(., b). dist(., b) is piecewise linear with maxima at the
// endpoints of a's intervals or at midpoints of b's gaps.
double directed(std::span<const Interval> a, std::span<const Interval> b) {
    double h = 0.0;
    for (const auto& iv : a)
        h = std::max({h, distance_to(b, iv.lo), distance_to(b, iv.hi)});
    for (std::size_t i = 1; i < b.size(); ++i) {
        const double mid = 0.5 * (b[i - 1].hi + b[i].lo);
        if (inside(a, mid))
            h = std::max(h, distance_to(b, mid));
    }
    return h;
}

} // namespace

double hausdorff_distance(std::span<const Interval> a, std::span<const Interval> b) {
    if (a.empty() || b.empty())
        throw SystemError("hausdorff distance of an empty cover");
    return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance(const IntervalCover& a, const IntervalCover& b) {
    return hausdorff_distance(std::span<const Interval>(a.intervals), std::span<const Interval>(b.intervals));
}

} // namespace cantor
