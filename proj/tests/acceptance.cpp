// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "cantor/campaign.hpp"
#include "cantor/dendrite.hpp"

using namespace cantor;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass)
                detail = what;
            pass = false;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && secs >= limit_seconds)
        o.require(false, "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit_seconds) + " s");
    if (!o.pass)
        ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << id << ' ' << name << " (" << std::fixed
              << std::setprecision(3) << secs << " s)";
    if (!o.pass)
        std::cout << ": " << o.detail;
    std::cout << std::endl;
}

Outcome statement_conditions() {
    Outcome o;
    const auto r5 = verify_statement_conditions(inverse_branches({5.0}));
    o.require(r5.injective, "mu=5 branches not injective");
    o.require(r5.fixed_points.size() == 2, "mu=5 fixed point count");
    if (r5.fixed_points.size() == 2) {
        o.require(std::abs(r5.fixed_points[0] - 0.0) < 1e-12, "fixed point 0");
        o.require(std::abs(r5.fixed_points[1] - 0.8) < 1e-12, "fixed point 0.8");
    }
    o.require(r5.modulus_sum_below_one, "mu=5 modulus sum not below one");
    o.require(std::abs(r5.modulus_sum - 2.0 / std::sqrt(5.0)) < 1e-9, "mu=5 modulus sum off the closed form");
    const auto r45 = verify_statement_conditions(inverse_branches({4.5}));
    o.require(!r45.modulus_sum_below_one, "mu=4.5 modulus condition should fail");
    o.require(std::abs(r45.modulus_sum - 4.0 / 3.0) < 1e-4, "mu=4.5 modulus sum not about 1.3333");
    return o;
}

Outcome coverage() {
    Outcome o;
    const auto sys = inverse_branches({5.0});
    IntervalCover cur = invariant_cover(sys, 0);
    for (int n = 0; n <= 14; ++n) {
        const IntervalCover next = invariant_cover(sys, n + 1);
        const double h = hausdorff_distance(apply_system(sys, cur), next);
        o.require(h < 1e-12, "Hausdorff distance " + std::to_string(h) + " at n=" + std::to_string(n));
        o.require(nested_in(next, cur), "nesting fails at n=" + std::to_string(n));
        cur = next;
    }
    o.require(invariant_cover(sys, 14).intervals.size() == 16384, "Lambda_14 interval count");
    return o;
}

Outcome partition_laws() {
    Outcome o;
    for (int n = 1; n <= 64; ++n) {
        const auto p = build_partition(ClopenSet::full(), n);
        const auto laws = check_partition(p);
        o.require(p.size() == static_cast<std::size_t>(n) && laws.all(),
                  "n=" + std::to_string(n) + ": " + laws.describe());
    }
    for (int n = 2; n <= 8; ++n)
        for (std::size_t start = 0; start < static_cast<std::size_t>(n); ++start) {
            Partition p = build_partition(ClopenSet::full(), n);
            std::vector<std::size_t> path;
            for (int d = 0; d < 3; ++d) {
                path.push_back(d == 0 ? start : 0);
                p = refine_block(p, path, n);
            }
            const bool ok = check_partition(p).all() &&
                            p.leaves().size() == static_cast<std::size_t>(4 * (n - 1) + 1);
            o.require(ok, "depth-3 refinement n=" + std::to_string(n));
        }
    return o;
}

Outcome isometry() {
    Outcome o;
    for (int n = 2; n <= 5; ++n) {
        const QuotientSpace q = build_quotient(make_quotient_spec(build_partition(ClopenSet::full(), n)));
        int bad = 0;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const Address x = sample_address(q.base_block(), 7, 2 * i);
            const Address y = sample_address(q.base_block(), 7, 2 * i + 1);
            if (quotient_metric(q, q.h(x), q.h(y)) != code_distance(x, y))
                ++bad;
        }
        o.require(bad == 0, std::to_string(bad) + " mismatches at n=" + std::to_string(n));
    }
    return o;
}

Outcome conjugation() {
    Outcome o;
    const auto sys = inverse_branches({5.0});
    const auto levels = build_hierarchy(sys, HierarchyConfig{2, 3, RepresentativePolicy::distinct, {}});
    o.require(levels.size() == 4, "expected levels S, D1, D2, D3");
    const double bound = 1.0 / std::sqrt(5.0) + 1e-9;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto rep = verify_self_similarity(levels, k, sys, {10, 10000, 0});
        const std::string at = " at level " + levels[k].name;
        o.require(rep.coverage_equal, "cylinder images differ" + at);
        o.require(rep.conjugation_identity, "conjugation identity" + at);
        for (const auto* ratios : {&rep.ratio_transported, &rep.ratio_quotient, &rep.ratio_dynamical})
            for (double r : *ratios)
                o.require(r <= bound, "ratio " + std::to_string(r) + at);
    }
    return o;
}

Outcome nontriviality() {
    Outcome o;
    for (int n = 2; n <= 16; ++n) {
        const auto p = build_partition(ClopenSet::full(), n);
        const auto distinct = build_quotient(make_quotient_spec(p)).multi_point_fibers().size();
        o.require(distinct == static_cast<std::size_t>(n - 1),
                  "distinct n=" + std::to_string(n) + " has " + std::to_string(distinct) + " multi-point fibers");
        const auto merged =
            build_quotient(make_quotient_spec(p, RepresentativePolicy::merged)).multi_point_fibers().size();
        o.require(merged >= 1, "merged n=" + std::to_string(n) + " is injective");
    }
    const auto levels = build_hierarchy(inverse_branches({5.0}), HierarchyConfig{3, 3, RepresentativePolicy::distinct, {}});
    for (const auto& level : levels)
        if (level.quotient)
            o.require(level.quotient->multi_point_fibers().size() == 2, "level " + level.name);
    return o;
}

Outcome dendrite() {
    Outcome o;
    const DendriteGraph g(4);
    const auto points = vertices_and_midpoints(g);
    o.require(points.size() == 31 + 30, "vertex and midpoint count");
    for (const auto& p : points)
        o.require(!fiber_of(g, p, 12).cylinders.empty(), "empty fiber");
    HierarchyLevel base;
    base.name = "S";
    base.carrier = ClopenSet::full();
    const auto counts = lift_to_level(base, g).fiber_counts(points, 12);
    for (auto c : counts)
        o.require(c > 0, "empty fiber in census");

    const Rational T = g.tour_length();
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10000; ++i) {
        const auto m = static_cast<std::size_t>(rng() % 21);
        Word common;
        for (std::size_t s = 0; s < m; ++s)
            common += (rng() & 1U) ? '1' : '0';
        const ClopenSet cyl(std::vector<Cylinder>{Cylinder(common)});
        const Address a = sample_address(cyl, rng(), 0, 24);
        const Address b = sample_address(cyl, rng(), 1, 24);
        const Rational d = tree_distance(g, dendrite_map(g, a), dendrite_map(g, b));
        if (d > T / Rational(boost::multiprecision::cpp_int(1) << m)) {
            o.require(false, "continuity fails for " + a.to_string() + ", " + b.to_string());
            break;
        }
    }
    return o;
}

int shell(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    const std::string bin = CANTOR_COARSE_BIN;
    const auto root = fs::temp_directory_path() / ("cantor_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const auto a = root / "a";
    const auto b = root / "b";
    for (const auto* cmd : {"verify", "hierarchy", "render"}) {
        const int ra = shell(bin + ' ' + cmd + " --out " + a.string());
        const int rb = shell(bin + ' ' + cmd + " --out " + b.string());
        o.require(ra == 0 && rb == 0, std::string(cmd) + " exit status");
    }
    for (const auto* f : {"report.json", "hierarchy.json", "cantor_bars.svg", "logistic.svg", "hierarchy.svg",
                          "dendrite.svg"}) {
        o.require(fs::exists(a / f), std::string(f) + " missing");
        o.require(slurp(a / f) == slurp(b / f), std::string(f) + " differs between runs");
    }
    o.require(shell(bin + " verify --mu 4.5 --out " + (root / "c").string()) == 1, "mu=4.5 exit status");
    o.require(slurp(root / "c" / "report.json").find("statement.modulus_sum") != std::string::npos,
              "mu=4.5 report does not name the failing check");
    o.require(shell(bin + " verify --mu 3.9 --out " + (root / "d").string()) == 2, "mu=3.9 exit status");
    fs::remove_all(root);
    return o;
}

} // namespace

int main() {
    criterion(1, "statement conditions", 1.0, statement_conditions);
    criterion(2, "self-similarity coverage n<=14", 5.0, coverage);
    criterion(3, "partition laws n<=64, refinement depth 3", 1.0, partition_laws);
    criterion(4, "quotient isometry, 1000 pairs", 0, isometry);
    criterion(5, "conjugation k<=3 at depth 10", 10.0, conjugation);
    criterion(6, "nontriviality of quotients", 0, nontriviality);
    criterion(7, "dendrite surjection L=4 depth 12, continuity", 5.0, dendrite);
    criterion(8, "determinism and exit statuses", 0, determinism);
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
