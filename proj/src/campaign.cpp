#include "cantor/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "cantor/dendrite.hpp"
#include "cantor/kernels.hpp"

namespace cantor {

using nlohmann::json;

// ---------------------------------------------------------------- config

void validate(const RunConfig& c) {
    if (!(c.mu > 4.0))
        throw ConfigError("mu must exceed 4");
    if (c.depth < 0 || c.depth > 30)
        throw ConfigError("depth must be in [0, 30]");
    if (c.partition_n < 2 || c.partition_n > 64)
        throw ConfigError("n must be in [2, 64]");
    if (c.levels < 0 || c.levels > 8)
        throw ConfigError("levels must be in [0, 8]");
    if (c.dendrite_depth < 0 || c.dendrite_depth > 8)
        throw ConfigError("dendrite depth must be in [0, 8]");
    if (!(c.tolerance > 0.0))
        throw ConfigError("tolerance must be positive");
    if (c.samples == 0)
        throw ConfigError("samples must be positive");
    if (c.policy == RepresentativePolicy::explicit_list &&
        c.representatives.size() + 1 != static_cast<std::size_t>(c.partition_n))
        throw ConfigError("explicit representatives must number n - 1");
}

RunConfig merge_config(RunConfig base, const json& j) {
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "mu")
                base.mu = value.get<double>();
            else if (key == "depth")
                base.depth = value.get<int>();
            else if (key == "partition_n" || key == "n")
                base.partition_n = value.get<int>();
            else if (key == "levels")
                base.levels = value.get<int>();
            else if (key == "dendrite_depth")
                base.dendrite_depth = value.get<int>();
            else if (key == "tolerance")
                base.tolerance = value.get<double>();
            else if (key == "seed")
                base.seed = value.get<std::uint64_t>();
            else if (key == "samples")
                base.samples = value.get<std::size_t>();
            else if (key == "out")
                base.out = value.get<std::string>();
            else if (key == "representatives") {
                if (value.is_string()) {
                    const auto s = value.get<std::string>();
                    if (s == "distinct")
                        base.policy = RepresentativePolicy::distinct;
                    else if (s == "merged")
                        base.policy = RepresentativePolicy::merged;
                    else
                        throw ConfigError("representatives must be \"distinct\", \"merged\" or a list");
                } else {
                    base.policy = RepresentativePolicy::explicit_list;
                    base.representatives.clear();
                    for (const auto& a : value)
                        base.representatives.push_back(Address::parse(a.get<std::string>()));
                }
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    } catch (const SpaceError& e) {
        throw ConfigError(std::string("bad representative: ") + e.what());
    }
    return base;
}

json to_json(const RunConfig& c) {
    json j;
    j["mu"] = c.mu;
    j["depth"] = c.depth;
    j["partition_n"] = c.partition_n;
    j["levels"] = c.levels;
    j["dendrite_depth"] = c.dendrite_depth;
    j["tolerance"] = c.tolerance;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    switch (c.policy) {
    case RepresentativePolicy::distinct:
        j["representatives"] = "distinct";
        break;
    case RepresentativePolicy::merged:
        j["representatives"] = "merged";
        break;
    case RepresentativePolicy::explicit_list: {
        json list = json::array();
        for (const auto& a : c.representatives)
            list.push_back(a.to_string());
        j["representatives"] = list;
        break;
    }
    }
    return j;
}

// ---------------------------------------------------------------- report

std::size_t VerificationReport::passed() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; }));
}

const CheckRecord* VerificationReport::find(const std::string& check, const std::string& location) const {
    for (const auto& r : records)
        if (r.check == check && (location.empty() || r.location == location))
            return &r;
    return nullptr;
}

json to_json(const VerificationReport& r, const RunConfig& c) {
    json records = json::array();
    for (const auto& rec : r.records)
        records.push_back({{"check", rec.check},
                           {"location", rec.location},
                           {"measured", rec.measured},
                           {"bound", rec.bound},
                           {"pass", rec.pass}});
    return {{"config", to_json(c)},
            {"records", records},
            {"summary",
             {{"total", r.records.size()}, {"passed", r.passed()}, {"failed", r.failed()}, {"pass", r.pass()}}}};
}

namespace {

double as_double(const Rational& r) {
    return r.convert_to<double>();
}

QuotientSpec level_one_spec(const RunConfig& c) {
    return make_quotient_spec(build_partition(ClopenSet::full(), c.partition_n), c.policy, c.representatives);
}

HierarchyConfig hierarchy_config(const RunConfig& c) {
    return HierarchyConfig{c.partition_n, c.levels, c.policy, c.representatives};
}

class Campaign {
public:
    explicit Campaign(const RunConfig& c)
        : c_(c), sys_(inverse_branches({c.mu})), cover_depth_(std::min(c.depth, kMaxEnumerationDepth)) {}

    VerificationReport run() {
        statement();
        covers();
        partitions();
        quotient();
        hierarchy();
        dendrite();
        return std::move(report_);
    }

private:
    void add(std::string check, std::string location, double measured, double bound, bool pass) {
        spdlog::debug("{} [{}] measured={} bound={} {}", check, location, measured, bound, pass ? "pass" : "FAIL");
        report_.records.push_back({std::move(check), std::move(location), measured, bound, pass});
    }

    void statement() {
        const auto rep = verify_statement_conditions(sys_);
        add("statement.injective", "S", rep.injective ? 1.0 : 0.0, 1.0, rep.injective);
        add("statement.fixed_points", "S", static_cast<double>(rep.fixed_points.size()), 2.0,
            rep.fixed_points_not_singleton);
        add("statement.modulus_sum", "S", rep.modulus_sum, 1.0, rep.modulus_sum_below_one);
        add("statement.modulus_bound", "S", rep.max_sampled_derivative, sys_.max_modulus(), rep.modulus_consistent);
        statement_ok_ = rep.all();

        const QuadraticParams p{c_.mu};
        const double worst = kernels::parallel::max_over(10000, [&](std::size_t i) {
            std::mt19937_64 rng(c_.seed + i);
            const double y = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            double e = 0.0;
            for (std::size_t j = 0; j < sys_.size(); ++j)
                e = std::max(e, std::abs(logistic(p, sys_.apply(j, y)) - y));
            return e;
        });
        add("statement.branch_inversion", "S", worst, c_.tolerance, worst < c_.tolerance);
    }

    void covers() {
        IntervalCover cur = invariant_cover(sys_, 0);
        const QuadraticParams p{c_.mu};
        for (int n = 0; n < cover_depth_; ++n) {
            const IntervalCover next = invariant_cover(sys_, n + 1);
            const std::string loc = "n=" + std::to_string(n);
            const double h = hausdorff_distance(apply_system(sys_, cur), next);
            add("cover.coverage", loc, h, c_.tolerance, h < c_.tolerance);
            const bool nested = nested_in(next, cur, c_.tolerance);
            add("cover.nesting", loc, nested ? 1.0 : 0.0, 1.0, nested);

            // Forward route: F maps Lambda_{n+1} onto Lambda_n.
            IntervalCover forward{n, {}};
            for (const auto& iv : next.intervals) {
                const double a = logistic(p, iv.lo);
                const double b = logistic(p, iv.hi);
                forward.intervals.push_back(a <= b ? Interval{a, b} : Interval{b, a});
            }
            std::sort(forward.intervals.begin(), forward.intervals.end(),
                      [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
            forward.intervals.erase(std::unique(forward.intervals.begin(), forward.intervals.end(),
                                                [&](const Interval& x, const Interval& y) {
                                                    return std::abs(x.lo - y.lo) < c_.tolerance &&
                                                           std::abs(x.hi - y.hi) < c_.tolerance;
                                                }),
                                    forward.intervals.end());
            const double hf = hausdorff_distance(forward, cur);
            add("cover.forward_image", loc, hf, c_.tolerance, hf < c_.tolerance);
            cur = next;
        }
        const auto expected = static_cast<double>(std::size_t{1} << cover_depth_);
        bool disjoint = true;
        for (std::size_t i = 1; i < cur.intervals.size(); ++i)
            disjoint = disjoint && cur.intervals[i].lo > cur.intervals[i - 1].hi;
        add("cover.interval_count", "n=" + std::to_string(cover_depth_), static_cast<double>(cur.intervals.size()),
            expected, disjoint && static_cast<double>(cur.intervals.size()) == expected);

        const double alpha = sys_.max_modulus();
        double worst = 0.0;
        for (int d = 1; d <= std::max(1, c_.depth); ++d) {
            const double bound = std::pow(alpha, d) / 2.0;
            for (std::uint64_t i = 0; i < 100; ++i) {
                const Address a = sample_address(ClopenSet::full(), c_.seed, i, 32);
                worst = std::max(worst, itinerary_point(sys_, a, d).radius / bound);
            }
        }
        add("cover.itinerary_radius", "S", worst, 1.0, worst <= 1.0 + 1e-9);
    }

    void partitions() {
        int bad = 0;
        for (int n = 1; n <= 64; ++n)
            if (!check_partition(build_partition(ClopenSet::full(), n)).all())
                ++bad;
        add("partition.laws", "n=1..64", bad, 0.0, bad == 0);

        Partition p = build_partition(ClopenSet::full(), c_.partition_n);
        std::vector<std::size_t> path;
        for (int d = 0; d < 3; ++d) {
            path.push_back(0);
            p = refine_block(p, path, c_.partition_n);
        }
        const std::size_t leaves = p.leaves().size();
        const std::size_t expected = static_cast<std::size_t>(4 * (c_.partition_n - 1) + 1);
        const bool ok = check_partition(p).all() && leaves == expected;
        add("partition.refine", "depth=3", static_cast<double>(leaves), static_cast<double>(expected), ok);
    }

    void quotient() {
        const QuotientSpace q = build_quotient(level_one_spec(c_));
        const std::string loc = "n=" + std::to_string(c_.partition_n);

        int mismatches = 0;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const Address x = sample_address(q.base_block(), c_.seed, 2 * i);
            const Address y = sample_address(q.base_block(), c_.seed, 2 * i + 1);
            if (quotient_metric(q, q.h(x), q.h(y)) != code_distance(x, y))
                ++mismatches;
        }
        add("quotient.isometry", loc, mismatches, 0.0, mismatches == 0);

        const auto multi = q.multi_point_fibers().size();
        const bool distinct = c_.policy == RepresentativePolicy::distinct;
        const bool ok = multi >= 1 && (!distinct || multi == static_cast<std::size_t>(c_.partition_n - 1));
        add("quotient.nontrivial", loc, static_cast<double>(multi),
            distinct ? static_cast<double>(c_.partition_n - 1) : 1.0, ok);

        int violations = 0;
        const auto fibers = q.multi_point_fibers();
        for (const auto& cyl : ClopenSet::full().refine(8)) {
            const Address y = cyl.min_point();
            const Fiber f = q.fiber_containing(y);
            if (!f.contains(y))
                ++violations;
            for (const auto& g : fibers)
                if (g != f && g.contains(y))
                    ++violations;
        }
        add("quotient.fiber_laws", loc, violations, 0.0, violations == 0);
    }

    void hierarchy() {
        if (!statement_ok_) {
            add("hierarchy.precondition", "S", 0.0, 1.0, false);
            return;
        }
        levels_ = build_hierarchy(sys_, hierarchy_config(c_));
        const int depth = std::min(c_.depth, kMaxEnumerationDepth);
        for (std::size_t k = 0; k < levels_.size(); ++k) {
            const auto rep = verify_self_similarity(levels_, k, sys_, {depth, c_.samples, c_.seed});
            const std::string& loc = levels_[k].name;
            add("hierarchy.coverage", loc, static_cast<double>(rep.image_count),
                static_cast<double>(rep.expected_count), rep.coverage_equal);
            add("hierarchy.hausdorff", loc, rep.hausdorff, c_.tolerance, rep.hausdorff < c_.tolerance);
            for (std::size_t j = 0; j < rep.bound.size(); ++j) {
                const std::string bl = loc + "/f" + std::to_string(j + 1);
                const double bound = rep.bound[j] + 1e-9;
                add("hierarchy.ratio_transported", bl, rep.ratio_transported[j], bound,
                    rep.ratio_transported[j] <= bound);
                add("hierarchy.ratio_quotient", bl, rep.ratio_quotient[j], bound, rep.ratio_quotient[j] <= bound);
                add("hierarchy.ratio_dynamical", bl, rep.ratio_dynamical[j], bound,
                    rep.ratio_dynamical[j] <= bound);
            }
            add("hierarchy.conjugation", loc, rep.conjugation_identity ? 1.0 : 0.0, 1.0, rep.conjugation_identity);
        }
    }

    void dendrite() {
        const DendriteGraph g(c_.dendrite_depth);
        const std::string loc = "L=" + std::to_string(c_.dendrite_depth);
        const Rational T = g.tour_length();

        add("dendrite.tour_length", loc, as_double(T), as_double(2 * g.total_edge_length()),
            T == 2 * g.total_edge_length());

        const auto points = vertices_and_midpoints(g);
        double worst = 0.0;
        for (const auto& p : points) {
            const auto f = fiber_of(g, p, 2 * c_.dendrite_depth + 4);
            for (const auto& w : f.witnesses)
                worst = std::max(worst, as_double(tree_distance(g, dendrite_map(g, w), p)));
        }
        add("dendrite.fiber_soundness", loc, worst, 1e-9, worst <= 1e-9);

        const double ratio = kernels::parallel::max_over(10000, [&](std::size_t i) {
            std::mt19937_64 rng(c_.seed ^ (0x5bd1e995ULL * (i + 1)));
            const auto m = static_cast<std::size_t>(rng() % 21);
            Word common;
            for (std::size_t s = 0; s < m; ++s)
                common += (rng() & 1U) ? '1' : '0';
            const Address a = sample_address(ClopenSet(std::vector<Cylinder>{Cylinder(common)}), rng(), 0, 24);
            const Address b = sample_address(ClopenSet(std::vector<Cylinder>{Cylinder(common)}), rng(), 1, 24);
            const Rational bound = T / Rational(boost::multiprecision::cpp_int(1) << m);
            return as_double(tree_distance(g, dendrite_map(g, a), dendrite_map(g, b)) / bound);
        });
        add("dendrite.continuity", loc, ratio, 1.0, ratio <= 1.0);

        const int depth = std::min(2 * c_.dendrite_depth + 4, kMaxEnumerationDepth);
        std::vector<HierarchyLevel> levels = levels_;
        if (levels.empty()) {
            HierarchyLevel base;
            base.name = "S";
            base.carrier = ClopenSet::full();
            levels.push_back(std::move(base));
        }
        for (const auto& level : levels) {
            const auto counts = lift_to_level(level, g).fiber_counts(points, depth);
            const auto empty = std::count(counts.begin(), counts.end(), std::size_t{0});
            add("dendrite.surjective", level.name + "/" + loc + "/depth=" + std::to_string(depth),
                static_cast<double>(empty), 0.0, empty == 0);
        }
    }

    RunConfig c_;
    WeakContractionSystem sys_;
    int cover_depth_;
    bool statement_ok_ = false;
    std::vector<HierarchyLevel> levels_;
    VerificationReport report_;
};

json rules_json(const PrefixMap& m) {
    json out = json::array();
    for (const auto& r : m.rules())
        out.push_back({{"from", r.from}, {"to", r.to}});
    return out;
}

json words_json(const std::vector<Cylinder>& cs) {
    json out = json::array();
    for (const auto& c : cs)
        out.push_back(c.word());
    return out;
}

json clopen_json(const ClopenSet& s) {
    return words_json(s.cylinders());
}

std::string rational_text(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

} // namespace

VerificationReport run_verification(const RunConfig& c) {
    validate(c);
    return Campaign(c).run();
}

json hierarchy_document(const RunConfig& c) {
    validate(c);
    const auto sys = inverse_branches({c.mu});
    const auto levels = build_hierarchy(sys, hierarchy_config(c));
    const int depth = std::min(c.depth, kMaxDocumentDepth);

    json out_levels = json::array();
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const HierarchyLevel& lvl = levels[k];
        json j;
        j["name"] = lvl.name;
        j["level"] = lvl.level;
        j["carrier"] = clopen_json(lvl.carrier);
        j["cylinders"] = words_json(lvl.carrier.refine(static_cast<std::size_t>(depth)));
        json cover = json::array();
        for (const auto& iv : transported_cover(lvl, sys, depth).intervals)
            cover.push_back({iv.lo, iv.hi});
        j["interval_cover"] = cover;

        json fibers = json::array();
        if (lvl.quotient)
            for (const auto& f : lvl.quotient->multi_point_fibers())
                fibers.push_back({{"label", f.label.to_string()}, {"collapsed", clopen_json(f.collapsed)}});
        j["fiber_labels"] = fibers;
        j["partition"] = json::array();
        if (lvl.quotient)
            for (const auto& b : lvl.quotient->blocks())
                j["partition"].push_back(clopen_json(b));

        j["homeomorphism"] = {{"forward", rules_json(lvl.link.forward)}, {"backward", rules_json(lvl.link.backward)}};
        j["chart"] = {{"forward", rules_json(lvl.chart.forward)}, {"backward", rules_json(lvl.chart.backward)}};
        json maps = json::array();
        for (const auto& f : lvl.contractions)
            maps.push_back(rules_json(f));
        j["contractions"] = maps;
        json moduli = json::array();
        for (std::size_t b = 0; b < sys.size(); ++b)
            moduli.push_back(sys.modulus(b));
        j["modulus"] = moduli;

        const auto rep = verify_self_similarity(levels, k, sys, {depth, std::min<std::size_t>(c.samples, 1000), c.seed});
        j["verification"] = {{"coverage_equal", rep.coverage_equal},
                             {"hausdorff", rep.hausdorff},
                             {"max_ratio_transported", rep.ratio_transported},
                             {"max_ratio_dynamical", rep.ratio_dynamical},
                             {"conjugation_identity", rep.conjugation_identity}};
        out_levels.push_back(std::move(j));
    }
    return {{"config", to_json(c)}, {"enumeration_depth", depth}, {"levels", out_levels}};
}

json partition_document(const RunConfig& c) {
    validate(c);
    const Partition p = build_partition(ClopenSet::full(), c.partition_n);
    const Partition refined = refine_block(p, 0, c.partition_n);
    json blocks = json::array();
    for (const auto& b : p.block_sets())
        blocks.push_back(clopen_json(b));
    json leaves = json::array();
    for (const auto& b : refined.leaves())
        leaves.push_back(clopen_json(b));
    const auto laws = check_partition(refined);
    return {{"n", c.partition_n},
            {"carrier", clopen_json(p.carrier)},
            {"blocks", blocks},
            {"refined_first_block", leaves},
            {"laws", {{"disjoint", laws.disjoint}, {"covers", laws.covers}, {"non_empty", laws.non_empty}}}};
}

json dendrite_document(const RunConfig& c) {
    validate(c);
    const DendriteGraph g(c.dendrite_depth);
    const int depth = std::min(2 * c.dendrite_depth + 4, kMaxEnumerationDepth);
    HierarchyLevel base;
    base.carrier = ClopenSet::full();
    std::vector<TreePoint> vpoints;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        vpoints.push_back(g.vertex_point(static_cast<int>(v)));
    const auto counts = lift_to_level(base, g).fiber_counts(vpoints, depth);

    json vertices = json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto& vx = g.vertex(v);
        json params = json::array();
        for (const auto& t : tour_parameters(g, vpoints[v]))
            params.push_back(rational_text(t));
        vertices.push_back({{"id", v},
                            {"parent", vx.parent},
                            {"level", vx.level},
                            {"x", vx.x},
                            {"y", vx.y},
                            {"tour_parameters", params},
                            {"fiber_cylinders", counts[v]}});
    }
    json edges = json::array();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const int ei = static_cast<int>(e);
        edges.push_back({{"id", e},
                         {"parent", g.edge_parent(ei)},
                         {"child", g.edge_child(ei)},
                         {"length", rational_text(g.edge_length(ei))}});
    }
    return {{"depth", c.dendrite_depth},
            {"address_depth", depth},
            {"tour_length", rational_text(g.tour_length())},
            {"vertices", vertices},
            {"edges", edges}};
}

} // namespace cantor
