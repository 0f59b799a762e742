#include "doctest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "cantor/campaign.hpp"
#include "cantor/render.hpp"

using namespace cantor;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1))
        ++n;
    return n;
}

// Text of every element opened by `open` up to the next `close`.
std::vector<std::string> sections(const std::string& s, const std::string& open, const std::string& close) {
    std::vector<std::string> out;
    for (auto pos = s.find(open); pos != std::string::npos; pos = s.find(open, pos + 1))
        out.push_back(s.substr(pos, s.find(close, pos) - pos));
    return out;
}

RunConfig quick() {
    RunConfig c;
    c.depth = 6;
    c.samples = 500;
    c.dendrite_depth = 2;
    return c;
}

} // namespace

TEST_CASE("config validation") {
    CHECK_NOTHROW(validate(RunConfig{}));
    auto bad = [](auto mutate) {
        RunConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_WITH_AS(validate(bad([](RunConfig& c) { c.mu = 3.9; })), "mu must exceed 4", ConfigError);
    CHECK_THROWS_WITH_AS(validate(bad([](RunConfig& c) { c.mu = 4.0; })), "mu must exceed 4", ConfigError);
    CHECK_THROWS_AS(validate(bad([](RunConfig& c) { c.depth = 31; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](RunConfig& c) { c.depth = -1; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](RunConfig& c) { c.levels = 9; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](RunConfig& c) { c.dendrite_depth = 9; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](RunConfig& c) { c.tolerance = 0; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](RunConfig& c) { c.partition_n = 1; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](RunConfig& c) { c.samples = 0; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](RunConfig& c) {
                        c.policy = RepresentativePolicy::explicit_list;
                        c.partition_n = 3;
                        c.representatives = {Address::parse("01")};
                    })),
                    ConfigError);
    CHECK_NOTHROW(validate(bad([](RunConfig& c) {
        c.depth = 30;
        c.levels = 8;
        c.dendrite_depth = 8;
    })));
}

TEST_CASE("merge_config overlays keys and rejects unknown ones") {
    const auto c = merge_config(RunConfig{}, nlohmann::json::parse(R"({"mu": 6.5, "levels": 3, "seed": 9})"));
    CHECK(c.mu == 6.5);
    CHECK(c.levels == 3);
    CHECK(c.seed == 9);
    CHECK(c.depth == RunConfig{}.depth);

    const auto m = merge_config(RunConfig{}, nlohmann::json::parse(R"({"representatives": "merged"})"));
    CHECK(m.policy == RepresentativePolicy::merged);
    const auto e = merge_config(RunConfig{}, nlohmann::json::parse(R"j({"representatives": ["0011(0)"]})j"));
    CHECK(e.policy == RepresentativePolicy::explicit_list);
    CHECK(e.representatives == std::vector<Address>{Address::parse("0011(0)")});

    CHECK_THROWS_AS(merge_config(RunConfig{}, nlohmann::json::parse(R"({"mew": 5})")), ConfigError);
    CHECK_THROWS_AS(merge_config(RunConfig{}, nlohmann::json::parse(R"({"mu": "five"})")), ConfigError);
    CHECK_THROWS_AS(merge_config(RunConfig{}, nlohmann::json::parse(R"({"representatives": "some"})")),
                    ConfigError);
    CHECK_THROWS_AS(merge_config(RunConfig{}, nlohmann::json::parse(R"({"representatives": ["012"]})")),
                    ConfigError);
    CHECK_THROWS_AS(merge_config(RunConfig{}, nlohmann::json::parse("[1, 2]")), ConfigError);
}

TEST_CASE("config JSON round trip") {
    RunConfig c;
    c.mu = 7.25;
    c.partition_n = 3;
    c.policy = RepresentativePolicy::explicit_list;
    c.representatives = {Address::parse("01(0)"), Address::parse("011(0)")};
    const auto back = merge_config(RunConfig{}, to_json(c));
    CHECK(to_json(back) == to_json(c));
}

TEST_CASE("verification campaign at mu = 5 passes every check") {
    const auto c = quick();
    const auto report = run_verification(c);
    CHECK(report.pass());
    CHECK(report.failed() == 0);
    for (const auto* id : {"statement.injective", "statement.fixed_points", "statement.modulus_sum",
                           "cover.coverage", "cover.nesting", "partition.laws", "quotient.isometry",
                           "quotient.nontrivial", "hierarchy.coverage", "hierarchy.hausdorff",
                           "hierarchy.conjugation", "dendrite.surjective", "dendrite.continuity"})
        CHECK_MESSAGE(report.find(id) != nullptr, id);
    // Each (check, location) pair appears once.
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& r : report.records)
        CHECK(keys.insert({r.check, r.location}).second);

    const auto j = to_json(report, c);
    CHECK(j["summary"]["pass"] == true);
    CHECK(j["summary"]["total"] == report.records.size());
}

TEST_CASE("verification campaign at mu = 4.5 names the failing condition") {
    auto c = quick();
    c.mu = 4.5;
    const auto report = run_verification(c);
    CHECK_FALSE(report.pass());
    const auto* r = report.find("statement.modulus_sum");
    REQUIRE(r != nullptr);
    CHECK_FALSE(r->pass);
    CHECK(r->measured == doctest::Approx(4.0 / 3.0));
    CHECK(report.find("statement.injective")->pass);
    CHECK(report.find("statement.fixed_points")->pass);
    CHECK_FALSE(report.find("hierarchy.precondition")->pass);
}

TEST_CASE("hierarchy document shapes") {
    auto c = quick();
    c.levels = 0;
    const auto k0 = hierarchy_document(c);
    REQUIRE(k0["levels"].size() == 1);
    CHECK(k0["levels"][0]["name"] == "S");
    CHECK(k0["levels"][0]["interval_cover"].size() == 64);

    c.levels = 2;
    const auto k2 = hierarchy_document(c);
    REQUIRE(k2["levels"].size() == 3);
    CHECK(k2["levels"][0]["name"] == "S");
    CHECK(k2["levels"][1]["name"] == "D1");
    CHECK(k2["levels"][2]["name"] == "D2");
    for (const auto& lvl : k2["levels"]) {
        CHECK(lvl["verification"]["coverage_equal"] == true);
        CHECK(lvl["verification"]["hausdorff"].get<double>() < 1e-12);
        CHECK(lvl["modulus"][0].get<double>() == doctest::Approx(1.0 / std::sqrt(5.0)));
    }
    CHECK(k2["levels"][1]["fiber_labels"].size() == 1);
    CHECK(k2["levels"][1]["fiber_labels"][0]["label"] == "01(0)");

    c.depth = 0;
    const auto d0 = hierarchy_document(c);
    for (const auto& lvl : d0["levels"]) {
        CHECK(lvl["cylinders"] == lvl["carrier"]);
        CHECK(lvl["interval_cover"].size() == 1);
    }
    // Deterministic serialisation.
    CHECK(hierarchy_document(c).dump() == d0.dump());
}

TEST_CASE("hierarchy document matches the golden file for K = 2, n = 2") {
    RunConfig c;
    c.depth = 4;
    std::ifstream in(std::string(CANTOR_GOLDEN_DIR) + "/hierarchy_k2_n2_depth4.json");
    REQUIRE(in);
    std::ostringstream golden;
    golden << in.rdbuf();
    CHECK(hierarchy_document(c).dump(2) + "\n" == golden.str());
}

TEST_CASE("partition and dendrite documents") {
    auto c = quick();
    c.partition_n = 3;
    const auto p = partition_document(c);
    CHECK(p["blocks"] == nlohmann::json::parse(R"([["0"], ["10"], ["11"]])"));
    CHECK(p["refined_first_block"] == nlohmann::json::parse(R"([["00"], ["010"], ["011"], ["10"], ["11"]])"));
    CHECK(p["laws"]["covers"] == true);

    c.dendrite_depth = 1;
    const auto d = dendrite_document(c);
    CHECK(d["tour_length"] == "4/3");
    CHECK(d["vertices"].size() == 3);
    CHECK(d["edges"].size() == 2);
    CHECK(d["edges"][0]["length"] == "1/3");
    CHECK(d["vertices"][1]["tour_parameters"] == nlohmann::json::parse(R"(["1/4"])"));
    for (const auto& v : d["vertices"])
        CHECK(v["fiber_cylinders"].get<int>() > 0);
}

TEST_CASE("Cantor bars: depth 5 gives 6 rows with 2^n bars") {
    auto c = quick();
    c.depth = 5;
    const auto svg = render_cantor_bars(c);
    const auto rows = sections(svg, "<g class=\"row\"", "</g>");
    REQUIRE(rows.size() == 6);
    for (std::size_t n = 0; n < rows.size(); ++n)
        CHECK(count(rows[n], "<rect class=\"bar\"") == (std::size_t{1} << n));
}

TEST_CASE("hierarchy SVG: K = 3 gives 4 level nodes and 3 homeomorphism arrows") {
    auto c = quick();
    c.levels = 3;
    const auto svg = render_hierarchy(c);
    CHECK(count(svg, "<g class=\"level\"") == 4);
    CHECK(count(svg, "<g class=\"homeomorphism\"") == 3);
    CHECK(count(svg, "<g class=\"contraction\"") == 8);
    for (const auto* id : {"level-S", "level-D1", "level-D2", "level-D3"})
        CHECK(svg.find(id) != std::string::npos);
}

TEST_CASE("dendrite SVG: L = 3 gives 15 vertices and 14 edges per panel") {
    auto c = quick();
    c.dendrite_depth = 3;
    c.levels = 1;
    const auto svg = render_dendrite(c);
    const auto panels = sections(svg, "<g class=\"panel\"", "</g>");
    REQUIRE(panels.size() == 2);
    for (const auto& p : panels) {
        CHECK(count(p, "<circle class=\"vertex\"") == 15);
        CHECK(count(p, "<line class=\"edge\"") == 14);
        CHECK(count(p, "data-fiber=\"0\"") == 0);
    }
}

TEST_CASE("renderings are deterministic and well formed") {
    const auto c = quick();
    for (auto fn : {render_cantor_bars, render_logistic, render_hierarchy, render_dendrite}) {
        const auto a = fn(c);
        CHECK(a == fn(c));
        CHECK(a.rfind("<?xml", 0) == 0);
        CHECK(a.find("</svg>") != std::string::npos);
        CHECK(a.find("nan") == std::string::npos);
        CHECK(count(a, "<g") == count(a, "</g>"));
    }
}

TEST_CASE("hierarchy SVG falls back to the base level when the hierarchy cannot be built") {
    auto c = quick();
    c.mu = 4.5;
    c.levels = 2;
    const auto svg = render_hierarchy(c);
    CHECK(count(svg, "<g class=\"level\"") == 1);
}
