#pragma once

// The quadratic dynamics F(x) = mu x (1 - x), its two inverse branches as a
// weak-contraction system on [0,1], nested interval covers of the invariant
// Cantor set and an exact Hausdorff distance between finite interval unions.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantor/code_space.hpp"

namespace cantor {

/// Tolerance for floating identities on interval endpoints.
inline constexpr double kIdentityTolerance = 1e-12;

class SystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadraticParams {
    double mu = 5.0;
};

double logistic(QuadraticParams p, double x);

/// mu above which the inverse branches satisfy sum of moduli < 1: 2 + 2 sqrt 2.
double contraction_threshold_mu();

struct Branch {
    std::function<double(double)> map;
    std::function<double(double)> derivative;
};

/// Maps f_1..f_m on [0,1] with constant Lipschitz moduli. The modulus is
/// recorded independent of eta, so alpha_j(eta) = alpha_j and its infimum
/// coincide.
class WeakContractionSystem {
public:
    WeakContractionSystem(std::vector<Branch> branches, std::vector<double> moduli,
                          std::vector<double> fixed_points);

    std::size_t size() const noexcept { return branches_.size(); }
    const Branch& branch(std::size_t j) const { return branches_.at(j); }
    double apply(std::size_t j, double y) const { return branches_.at(j).map(y); }

    /// alpha_j(eta). Constant in eta.
    double modulus(std::size_t j, double /*eta*/ = 1.0) const { return moduli_.at(j); }
    double modulus_infimum(std::size_t j) const { return moduli_.at(j); }
    double max_modulus() const;

    /// Union of the branch fixed-point sets, sorted.
    const std::vector<double>& fixed_points() const noexcept { return fixed_points_; }

    /// Fixed point of a single branch by iteration from the interval midpoint.
    double branch_fixed_point(std::size_t j) const;

private:
    std::vector<Branch> branches_;
    std::vector<double> moduli_;
    std::vector<double> fixed_points_;
};

/// f1(y) = (1 - sqrt(1 - 4y/mu))/2 with values in [0,1/2] and
/// f2(y) = (1 + sqrt(1 - 4y/mu))/2 with values in [1/2,1]; modulus
/// 1/sqrt(mu(mu-4)); fixed points {0, 1 - 1/mu}.
/// Throws SystemError("branch domain does not cover [0,1]") for mu <= 4.
WeakContractionSystem inverse_branches(QuadraticParams p);

struct StatementReport {
    bool injective = false;
    bool fixed_points_not_singleton = false;
    bool modulus_sum_below_one = false;
    std::vector<double> fixed_points;
    double modulus_sum = 0.0;
    /// Largest |f_j'| seen on the grid; must not exceed the recorded modulus.
    double max_sampled_derivative = 0.0;
    bool modulus_consistent = false;

    bool all() const { return injective && fixed_points_not_singleton && modulus_sum_below_one; }
};

/// Checks injectivity (strict monotonicity and derivative sign on a grid),
/// that the fixed-point union has at least two points, and that the moduli
/// sum below one. Failures are reported, never thrown.
StatementReport verify_statement_conditions(const WeakContractionSystem& sys, std::size_t grid = 10000);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Image of an interval under a monotone branch.
Interval image(const WeakContractionSystem& sys, std::size_t j, Interval in);

struct IntervalCover {
    int depth = 0;
    std::vector<Interval> intervals;  // sorted, pairwise disjoint
};

/// Lambda_n = union of f_{s1} o ... o f_{sn}([0,1]) over words s of length n.
/// Throws SystemError("open set condition violated") if the branch images of
/// [0,1] overlap.
IntervalCover invariant_cover(const WeakContractionSystem& sys, int n);

/// Sorted union of f_j applied to every interval of the cover.
IntervalCover apply_system(const WeakContractionSystem& sys, const IntervalCover& cover);

/// f_{w1} o ... o f_{wn}([0,1]).
Interval word_interval(const WeakContractionSystem& sys, const Word& w);

/// True if every interval of `inner` lies inside an interval of `outer`.
bool nested_in(const IntervalCover& inner, const IntervalCover& outer, double tol = kIdentityTolerance);

struct ItineraryPoint {
    double midpoint = 0.0;
    double radius = 0.0;
};

/// Midpoint and half-width of the depth-n itinerary interval of `a`.
ItineraryPoint itinerary_point(const WeakContractionSystem& sys, const Address& a, int n);

/// Exact limit point of an eventually-constant address: the prefix branches
/// applied to the fixed point of the tail branch.
double itinerary_limit(const WeakContractionSystem& sys, const Address& a);

/// Exact Hausdorff distance between two finite unions of closed intervals.
double hausdorff_distance(std::span<const Interval> a, std::span<const Interval> b);
double hausdorff_distance(const IntervalCover& a, const IntervalCover& b);

} // namespace cantor
