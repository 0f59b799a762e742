#pragma once

// Coarse graining of the code space: the quotient map f that is the identity
// on the first partition block S_1 and constant q_i on every other block S_i,
// its decomposition space of fibers f^-1(x) labelled by x in S_1, the
// transported metric, conjugated contraction systems and the resulting
// hierarchy S -> D^1 -> D^2 -> ...

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cantor/clopen_partition.hpp"
#include "cantor/prefix_map.hpp"
#include "cantor/quadratic_system.hpp"

namespace cantor {

class QuotientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RepresentativePolicy { distinct, merged, explicit_list };

struct QuotientSpec {
    Partition partition;
    /// q_2 ... q_n, one per block after the first.
    std::vector<Address> representatives;
    /// Coincident representatives merge fibers; rejected unless enabled.
    bool allow_coincident = false;

    /// S_1 ... S_n (leaves of the partition).
    std::vector<ClopenSet> blocks() const { return partition.leaves(); }
};

/// Default representatives are q_i = c 1^(i-1) 0^inf for the first cylinder
/// word c of S_1; `merged` uses q_2 for every block.
QuotientSpec make_quotient_spec(Partition partition, RepresentativePolicy policy = RepresentativePolicy::distinct,
                                std::vector<Address> explicit_representatives = {});

/// Throws QuotientError if a representative lies outside S_1, the count is
/// wrong or representatives coincide without `allow_coincident`.
void validate(const QuotientSpec& spec);

/// f(x) = x on S_1 and q_i on S_i. Throws QuotientError outside the carrier.
Address quotient_map(const QuotientSpec& spec, const Address& x);

/// The fiber f^-1(label): the label itself plus every block whose
/// representative equals it.
struct Fiber {
    Address label;
    ClopenSet collapsed;

    bool multi_point() const noexcept { return !collapsed.empty(); }
    bool contains(const Address& y) const noexcept { return y == label || collapsed.contains(y); }

    friend bool operator==(const Fiber&, const Fiber&) = default;
};

using BaseMetric = std::function<Rational(const Address&, const Address&)>;

class QuotientSpace {
public:
    QuotientSpace(QuotientSpec spec, BaseMetric metric);

    const QuotientSpec& spec() const noexcept { return spec_; }
    const ClopenSet& carrier() const noexcept { return spec_.partition.carrier; }
    const ClopenSet& base_block() const noexcept { return blocks_.front(); }
    const std::vector<ClopenSet>& blocks() const noexcept { return blocks_; }

    /// h(x) = f^-1(x) for x in S_1.
    Fiber h(const Address& x) const;
    /// Label of a fiber of this space. Throws QuotientError on a foreign fiber.
    Address h_inverse(const Fiber& fiber) const;

    Fiber fiber_containing(const Address& y) const { return h(quotient_map(spec_, y)); }
    bool owns(const Fiber& fiber) const;

    std::vector<Fiber> multi_point_fibers() const;

    /// rho(F, F') = d(h^-1 F, h^-1 F').
    Rational metric(const Fiber& a, const Fiber& b) const;

private:
    QuotientSpec spec_;
    std::vector<ClopenSet> blocks_;
    BaseMetric metric_;
};

/// Throws QuotientError("trivial quotient") for a single-block partition.
QuotientSpace build_quotient(QuotientSpec spec, BaseMetric metric = code_distance);

Rational quotient_metric(const QuotientSpace& q, const Fiber& a, const Fiber& b);

/// q_j = h o p_j o h^-1, evaluated lazily per point or composed into prefix maps.
class ConjugateSystem {
public:
    ConjugateSystem(std::vector<PrefixMap> base, Homeomorphism hom);

    std::size_t size() const noexcept { return base_.size(); }
    const Homeomorphism& homeomorphism() const noexcept { return hom_; }

    /// Throws QuotientError if h is not invertible at y.
    Address apply(std::size_t j, const Address& y) const;

    std::vector<PrefixMap> materialize() const;

private:
    std::vector<PrefixMap> base_;
    Homeomorphism hom_;
};

ConjugateSystem conjugate_system(std::vector<PrefixMap> base, Homeomorphism hom);

/// Symbolic form of a two-branch system on the code space: p_j prepends the
/// branch symbol. Conjugate to the branches through the itinerary coding.
std::vector<PrefixMap> symbolic_branches(std::size_t m = 2);

struct HierarchyLevel {
    int level = 0;
    std::string name;  // "S", "D1", "D2", ...
    /// Labels of the level's points inside the code space.
    ClopenSet carrier;
    /// D^k as the decomposition space of level k-1; absent at level 0.
    std::optional<QuotientSpace> quotient;
    /// h^k on labels, previous carrier -> this carrier (identity at level 0).
    Homeomorphism link;
    /// S -> this level, the composition of all links.
    Homeomorphism chart;
    /// f_j^k = h^k o f_j^(k-1) o (h^k)^-1.
    std::vector<PrefixMap> contractions;
};

struct HierarchyConfig {
    int partition_n = 2;
    int levels = 1;
    RepresentativePolicy policy = RepresentativePolicy::distinct;
    std::vector<Address> explicit_representatives;
};

/// Levels 0..K. Level k quotients the carrier of level k-1 by the n-block
/// partition and links the two through the recoding onto S_1.
/// Throws QuotientError if the base system fails the contraction conditions.
std::vector<HierarchyLevel> build_hierarchy(const WeakContractionSystem& base, const HierarchyConfig& config);

/// f_j^k(y) evaluated through the chain of links instead of the composed map.
Address apply_lazy(std::span<const HierarchyLevel> levels, std::size_t k, std::size_t j, const Address& y);

struct SelfSimilarityOptions {
    int depth = 10;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

struct SelfSimilarityReport {
    int level = 0;
    int depth = 0;
    /// Cylinder words of the union of f_j^k images equal those of depth n+1.
    bool coverage_equal = false;
    std::size_t image_count = 0;
    std::size_t expected_count = 0;
    /// Hausdorff distance of the two enumerations pulled back to interval covers.
    double hausdorff = 0.0;
    /// Per-branch maximum sampled ratio: transported CMTS metric, the
    /// quotient metric on labels and the dynamical metric of the base system.
    std::vector<double> ratio_transported;
    std::vector<double> ratio_quotient;
    std::vector<double> ratio_dynamical;
    std::vector<double> bound;
    bool conjugation_identity = false;
};

SelfSimilarityReport verify_self_similarity(std::span<const HierarchyLevel> levels, std::size_t k,
                                            const WeakContractionSystem& base, const SelfSimilarityOptions& options);

/// Level-k cylinders at the given depth below the carrier, pulled back to
/// intervals of the base invariant cover.
IntervalCover transported_cover(const HierarchyLevel& level, const WeakContractionSystem& base, int depth);

/// Random eventually-constant address inside `within`, deterministic in
/// (seed, index).
Address sample_address(const ClopenSet& within, std::uint64_t seed, std::uint64_t index, std::size_t max_extra = 12);

} // namespace cantor
