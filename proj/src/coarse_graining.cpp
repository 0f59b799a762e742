#include "cantor/coarse_graining.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cantor/kernels.hpp"

namespace cantor {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

Address sample_address(const ClopenSet& within, std::uint64_t seed, std::uint64_t index, std::size_t max_extra) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
    const auto& cyl = within.cylinders();
    Word w = cyl[rng() % cyl.size()].word();
    const std::size_t extra = rng() % (max_extra + 1);
    for (std::size_t i = 0; i < extra; ++i)
        w += (rng() & 1U) ? '1' : '0';
    return Address(std::move(w), (rng() & 1U) ? '1' : '0');
}

// ---------------------------------------------------------------- quotient

QuotientSpec make_quotient_spec(Partition partition, RepresentativePolicy policy,
                                std::vector<Address> explicit_representatives) {
    QuotientSpec spec{std::move(partition), {}, false};
    const auto blocks = spec.blocks();
    if (blocks.empty())
        throw QuotientError("partition has no blocks");
    const Word& c = blocks.front().cylinders().front().word();
    switch (policy) {
    case RepresentativePolicy::distinct:
        for (std::size_t i = 2; i <= blocks.size(); ++i)
            spec.representatives.emplace_back(c + Word(i - 1, '1'), '0');
        break;
    case RepresentativePolicy::merged:
        spec.allow_coincident = true;
        for (std::size_t i = 2; i <= blocks.size(); ++i)
            spec.representatives.emplace_back(c + "1", '0');
        break;
    case RepresentativePolicy::explicit_list:
        spec.representatives = std::move(explicit_representatives);
        spec.allow_coincident = true;
        break;
    }
    validate(spec);
    return spec;
}

void validate(const QuotientSpec& spec) {
    const auto blocks = spec.blocks();
    if (spec.representatives.size() + 1 != blocks.size())
        throw QuotientError("expected " + std::to_string(blocks.size() - 1) + " representatives, got " +
                            std::to_string(spec.representatives.size()));
    for (const auto& q : spec.representatives)
        if (!blocks.front().contains(q))
            throw QuotientError("representative " + q.to_string() + " is not in S_1");
    if (!spec.allow_coincident) {
        auto reps = spec.representatives;
        std::sort(reps.begin(), reps.end());
        if (std::adjacent_find(reps.begin(), reps.end()) != reps.end())
            throw QuotientError("coincident representatives");
    }
}

Address quotient_map(const QuotientSpec& spec, const Address& x) {
    const auto blocks = spec.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].contains(x))
            return i == 0 ? x : spec.representatives[i - 1];
    throw QuotientError("address " + x.to_string() + " is outside the carrier");
}

QuotientSpace::QuotientSpace(QuotientSpec spec, BaseMetric metric)
    : spec_(std::move(spec)), blocks_(spec_.blocks()), metric_(std::move(metric)) {
    validate(spec_);
}

Fiber QuotientSpace::h(const Address& x) const {
    if (!base_block().contains(x))
        throw QuotientError("fiber label " + x.to_string() + " is not in S_1");
    ClopenSet collapsed;
    for (std::size_t i = 1; i < blocks_.size(); ++i)
        if (spec_.representatives[i - 1] == x)
            collapsed = collapsed.unite(blocks_[i]);
    return Fiber{x, std::move(collapsed)};
}

bool QuotientSpace::owns(const Fiber& fiber) const {
    return base_block().contains(fiber.label) && h(fiber.label) == fiber;
}

Address QuotientSpace::h_inverse(const Fiber& fiber) const {
    if (!owns(fiber))
        throw QuotientError("fiber labelled " + fiber.label.to_string() + " does not belong to this quotient");
    return fiber.label;
}

std::vector<Fiber> QuotientSpace::multi_point_fibers() const {
    auto reps = spec_.representatives;
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    std::vector<Fiber> out;
    for (const auto& q : reps)
        out.push_back(h(q));
    return out;
}

Rational QuotientSpace::metric(const Fiber& a, const Fiber& b) const {
    return metric_(h_inverse(a), h_inverse(b));
}

QuotientSpace build_quotient(QuotientSpec spec, BaseMetric metric) {
    if (spec.blocks().size() < 2)
        throw QuotientError("trivial quotient");
    QuotientSpace q(std::move(spec), std::move(metric));
    if (q.multi_point_fibers().empty())
        throw QuotientError("trivial quotient");
    return q;
}

Rational quotient_metric(const QuotientSpace& q, const Fiber& a, const Fiber& b) {
    return q.metric(a, b);
}

// ---------------------------------------------------------------- conjugation

ConjugateSystem::ConjugateSystem(std::vector<PrefixMap> base, Homeomorphism hom)
    : base_(std::move(base)), hom_(std::move(hom)) {}

Address ConjugateSystem::apply(std::size_t j, const Address& y) const {
    if (!hom_.backward.in_domain(y))
        throw QuotientError("homeomorphism is not invertible at " + y.to_string());
    const Address x = hom_.backward.apply(y);
    if (hom_.forward.apply(x) != y)
        throw QuotientError("homeomorphism is not invertible at " + y.to_string());
    return hom_.forward.apply(base_.at(j).apply(x));
}

std::vector<PrefixMap> ConjugateSystem::materialize() const {
    std::vector<PrefixMap> out;
    for (const auto& p : base_)
        out.push_back(hom_.backward.then(p).then(hom_.forward));
    return out;
}

ConjugateSystem conjugate_system(std::vector<PrefixMap> base, Homeomorphism hom) {
    return ConjugateSystem(std::move(base), std::move(hom));
}

std::vector<PrefixMap> symbolic_branches(std::size_t m) {
    if (m != 2)
        throw QuotientError("symbolic coding needs a two-branch system");
    return {PrefixMap::prepend("0"), PrefixMap::prepend("1")};
}

// ---------------------------------------------------------------- hierarchy

std::vector<HierarchyLevel> build_hierarchy(const WeakContractionSystem& base, const HierarchyConfig& config) {
    if (config.levels < 0)
        throw QuotientError("level count must be non-negative");
    if (!verify_statement_conditions(base).all())
        throw QuotientError("base system fails the contraction conditions");

    std::vector<HierarchyLevel> levels;
    HierarchyLevel top;
    top.level = 0;
    top.name = "S";
    top.carrier = ClopenSet::full();
    top.contractions = symbolic_branches(base.size());
    levels.push_back(std::move(top));

    std::vector<Address> explicit_reps = config.explicit_representatives;
    for (int k = 1; k <= config.levels; ++k) {
        const HierarchyLevel& prev = levels.back();
        Partition partition = build_partition(prev.carrier, config.partition_n);
        QuotientSpec spec = make_quotient_spec(std::move(partition), config.policy, explicit_reps);
        QuotientSpace quotient = build_quotient(std::move(spec));

        HierarchyLevel lvl;
        lvl.level = k;
        lvl.name = "D" + std::to_string(k);
        lvl.carrier = quotient.base_block();
        lvl.link = recode_between(prev.carrier, lvl.carrier);
        lvl.chart = prev.chart.then(lvl.link);
        lvl.contractions = conjugate_system(prev.contractions, lvl.link).materialize();
        lvl.quotient = std::move(quotient);

        // Explicit representatives follow the partition through the link.
        for (auto& q : explicit_reps)
            q = lvl.link.forward.apply(q);
        levels.push_back(std::move(lvl));
    }
    return levels;
}

Address apply_lazy(std::span<const HierarchyLevel> levels, std::size_t k, std::size_t j, const Address& y) {
    if (k == 0)
        return levels[0].contractions.at(j).apply(y);
    const Homeomorphism& link = levels[k].link;
    return link.forward.apply(apply_lazy(levels, k - 1, j, link.backward.apply(y)));
}

IntervalCover transported_cover(const HierarchyLevel& level, const WeakContractionSystem& base, int depth) {
    const auto cyl = level.carrier.refine(static_cast<std::size_t>(depth));
    const auto pulled = kernels::parallel::map_cylinders(level.chart.backward, cyl);
    IntervalCover cover{depth, {}};
    for (const auto& set : pulled)
        for (const auto& c : set.cylinders())
            cover.intervals.push_back(word_interval(base, c.word()));
    std::sort(cover.intervals.begin(), cover.intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return cover;
}

SelfSimilarityReport verify_self_similarity(std::span<const HierarchyLevel> levels, std::size_t k,
                                            const WeakContractionSystem& base, const SelfSimilarityOptions& options) {
    const HierarchyLevel& level = levels[k];
    SelfSimilarityReport rep;
    rep.level = level.level;
    rep.depth = options.depth;

    // Coverage: union over j of f_j^k(depth-n cylinders) against depth n+1.
    const auto cyl = level.carrier.refine(static_cast<std::size_t>(options.depth));
    std::vector<Word> image_words;
    IntervalCover image_cover{options.depth + 1, {}};
    for (const auto& f : level.contractions) {
        for (const auto& set : kernels::parallel::map_cylinders(f, cyl))
            for (const auto& c : set.cylinders()) {
                image_words.push_back(c.word());
                const ClopenSet pulled = level.chart.backward.apply(c);
                for (const auto& b : pulled.cylinders())
                    image_cover.intervals.push_back(word_interval(base, b.word()));
            }
    }
    std::vector<Word> expected;
    for (const auto& c : level.carrier.refine(static_cast<std::size_t>(options.depth) + 1))
        expected.push_back(c.word());
    std::sort(image_words.begin(), image_words.end());
    rep.image_count = image_words.size();
    rep.expected_count = expected.size();
    rep.coverage_equal = image_words == expected;

    std::sort(image_cover.intervals.begin(), image_cover.intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    rep.hausdorff = hausdorff_distance(image_cover, transported_cover(level, base, options.depth + 1));

    // Sampled contraction ratios.
    const std::uint64_t seed = options.seed + 0x1000ULL * static_cast<std::uint64_t>(k);
    const PrefixMap& back = level.chart.backward;
    auto pair_at = [&](std::size_t i) {
        return std::pair{sample_address(level.carrier, seed, 2 * i), sample_address(level.carrier, seed, 2 * i + 1)};
    };
    for (std::size_t j = 0; j < level.contractions.size(); ++j) {
        const PrefixMap& f = level.contractions[j];
        rep.bound.push_back(base.modulus(j));

        rep.ratio_transported.push_back(kernels::parallel::max_over(options.samples, [&](std::size_t i) {
            const auto [y, z] = pair_at(i);
            if (y == z)
                return kNaN;
            const Rational den = code_distance(back.apply(y), back.apply(z));
            return to_double(code_distance(back.apply(f.apply(y)), back.apply(f.apply(z))) / den);
        }));

        rep.ratio_quotient.push_back(kernels::parallel::max_over(options.samples, [&](std::size_t i) {
            const auto [y, z] = pair_at(i);
            if (y == z)
                return kNaN;
            if (!level.quotient)
                return to_double(code_distance(f.apply(y), f.apply(z)) / code_distance(y, z));
            const QuotientSpace& q = *level.quotient;
            return to_double(q.metric(q.h(f.apply(y)), q.h(f.apply(z))) / q.metric(q.h(y), q.h(z)));
        }));

        // Pairs that separate early keep the floating difference well above
        // rounding error.
        rep.ratio_dynamical.push_back(kernels::parallel::max_over(options.samples, [&](std::size_t i) {
            const auto [y, z] = pair_at(i);
            const Address by = back.apply(y);
            const Address bz = back.apply(z);
            if (by.head(6) == bz.head(6))
                return kNaN;
            const double den = std::abs(itinerary_limit(base, by) - itinerary_limit(base, bz));
            const double num =
                std::abs(itinerary_limit(base, back.apply(f.apply(y))) - itinerary_limit(base, back.apply(f.apply(z))));
            return num / den;
        }));
    }

    rep.conjugation_identity = true;
    const std::size_t probes = std::min<std::size_t>(options.samples, 200);
    for (std::size_t i = 0; i < probes && rep.conjugation_identity; ++i) {
        const Address y = sample_address(level.carrier, seed, i);
        for (std::size_t j = 0; j < level.contractions.size(); ++j)
            if (apply_lazy(levels, k, j, y) != level.contractions[j].apply(y))
                rep.conjugation_identity = false;
    }
    return rep;
}

} // namespace cantor
