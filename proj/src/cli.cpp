#include "cantor/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "cantor/campaign.hpp"
#include "cantor/render.hpp"

namespace cantor::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void setup_logging() {
    static bool done = false;
    if (done)
        return;
    done = true;
    auto logger = spdlog::stderr_color_mt("cantor-coarse");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("CANTOR_COARSE_LOG"))
        spdlog::set_level(spdlog::level::from_str(env));
}

// Flag values; an option only overrides the config when given.
struct Flags {
    double mu = 0;
    int depth = 0;
    int n = 0;
    int levels = 0;
    int dendrite_depth = 0;
    double tolerance = 0;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::string config;
    std::string out;

    struct Handles {
        CLI::Option* mu;
        CLI::Option* depth;
        CLI::Option* n;
        CLI::Option* levels;
        CLI::Option* dendrite_depth;
        CLI::Option* tolerance;
        CLI::Option* seed;
        CLI::Option* samples;
        CLI::Option* config;
        CLI::Option* out;
    };
    std::vector<Handles> handles;

    void attach(CLI::App* sub) {
        handles.push_back({
            sub->add_option("--mu", mu, "rate constant of F(x) = mu x (1 - x), must exceed 4"),
            sub->add_option("--depth", depth, "symbolic truncation depth"),
            sub->add_option("--n", n, "number of partition blocks"),
            sub->add_option("--levels", levels, "number of coarse-graining levels K"),
            sub->add_option("--dendrite-depth", dendrite_depth, "depth L of the dendrite tree"),
            sub->add_option("--tolerance", tolerance, "identity tolerance"),
            sub->add_option("--seed", seed, "seed for sampled checks"),
            sub->add_option("--samples", samples, "pairs per sampled contraction check"),
            sub->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile),
            sub->add_option("--out", out, "output directory"),
        });
    }

    RunConfig resolve(std::size_t which) const {
        const Handles& h = handles[which];
        RunConfig c;
        if (h.config->count()) {
            std::ifstream in(config);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError("cannot parse config " + config + ": " + e.what());
            }
            c = merge_config(c, j);
        }
        if (h.mu->count())
            c.mu = mu;
        if (h.depth->count())
            c.depth = depth;
        if (h.n->count())
            c.partition_n = n;
        if (h.levels->count())
            c.levels = levels;
        if (h.dendrite_depth->count())
            c.dendrite_depth = dendrite_depth;
        if (h.tolerance->count())
            c.tolerance = tolerance;
        if (h.seed->count())
            c.seed = seed;
        if (h.samples->count())
            c.samples = samples;
        if (h.out->count())
            c.out = out;
        validate(c);
        return c;
    }
};

std::filesystem::path output_dir(const RunConfig& c) {
    std::filesystem::path dir(c.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.close();
    if (!out)
        throw IoError("write to " + path.string() + " failed");
    spdlog::info("wrote {}", path.string());
}

std::string dump(const nlohmann::json& j) {
    return j.dump(2) + "\n";
}

int cmd_verify(const RunConfig& c) {
    const auto dir = output_dir(c);
    const VerificationReport report = run_verification(c);
    write_file(dir / "report.json", dump(to_json(report, c)));
    for (const auto& r : report.records)
        if (!r.pass)
            std::cout << "FAIL " << r.check << " [" << r.location << "] measured=" << r.measured
                      << " bound=" << r.bound << '\n';
    std::cout << report.passed() << '/' << report.records.size() << " checks passed\n";
    return report.pass() ? kSuccess : kCheckFailure;
}

int cmd_hierarchy(const RunConfig& c) {
    const auto dir = output_dir(c);
    const auto doc = hierarchy_document(c);
    write_file(dir / "hierarchy.json", dump(doc));
    std::cout << doc["levels"].size() << " levels written to " << (dir / "hierarchy.json").string() << '\n';
    return kSuccess;
}

int cmd_render(const RunConfig& c) {
    const auto dir = output_dir(c);
    write_file(dir / "cantor_bars.svg", render_cantor_bars(c));
    write_file(dir / "logistic.svg", render_logistic(c));
    write_file(dir / "hierarchy.svg", render_hierarchy(c));
    write_file(dir / "dendrite.svg", render_dendrite(c));
    std::cout << "4 SVG files written to " << dir.string() << '\n';
    return kSuccess;
}

int cmd_partition(const RunConfig& c) {
    const auto dir = output_dir(c);
    const auto doc = partition_document(c);
    write_file(dir / "partition.json", dump(doc));
    std::cout << doc["blocks"].dump() << '\n';
    return kSuccess;
}

int cmd_dendrite(const RunConfig& c) {
    const auto dir = output_dir(c);
    const auto doc = dendrite_document(c);
    write_file(dir / "dendrite.json", dump(doc));
    std::cout << doc["vertices"].size() << " vertices, tour length " << doc["tour_length"].get<std::string>()
              << '\n';
    return kSuccess;
}

} // namespace

int run(std::span<const std::string> args) {
    setup_logging();

    CLI::App app{"Self-similar coarse graining of the quadratic Cantor set", "cantor-coarse"};
    app.require_subcommand(1);
    Flags flags;

    struct Command {
        CLI::App* app;
        int (*fn)(const RunConfig&);
    };
    const std::vector<std::pair<std::string, std::string>> names = {
        {"verify", "run every verification check and write report.json"},
        {"hierarchy", "write the coarse-graining hierarchy as hierarchy.json"},
        {"render", "write SVG renderings"},
        {"partition", "write the clopen partition as partition.json"},
        {"dendrite", "write the dendrite and its fibers as dendrite.json"},
    };
    int (*const fns[])(const RunConfig&) = {cmd_verify, cmd_hierarchy, cmd_render, cmd_partition, cmd_dendrite};
    std::vector<Command> commands;
    for (std::size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i].first, names[i].second);
        flags.attach(sub);
        commands.push_back({sub, fns[i]});
    }

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kUsageError;
    }

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!commands[i].app->parsed())
            continue;
        try {
            return commands[i].fn(flags.resolve(i));
        } catch (const ConfigError& e) {
            std::cerr << "usage error: " << e.what() << '\n';
            return kUsageError;
        } catch (const IoError& e) {
            std::cerr << "I/O error: " << e.what() << '\n';
            return kIoError;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kCheckFailure;
        }
    }
    return kUsageError;
}

} // namespace cantor::cli
