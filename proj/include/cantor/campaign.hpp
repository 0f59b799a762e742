#pragma once

// Run configuration, the verification campaign behind `verify`, and the JSON
// documents emitted by `hierarchy`, `partition` and `dendrite`.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cantor/coarse_graining.hpp"

namespace cantor {

/// Invalid configuration; maps to the usage exit status.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Enumerations (interval covers, cylinder lists) stop at this depth even if
/// the configured depth is larger.
inline constexpr int kMaxEnumerationDepth = 20;
/// Cylinder lists in the hierarchy document stop here.
inline constexpr int kMaxDocumentDepth = 14;

struct RunConfig {
    double mu = 5.0;
    int depth = 12;
    int partition_n = 2;
    int levels = 2;
    int dendrite_depth = 4;
    RepresentativePolicy policy = RepresentativePolicy::distinct;
    std::vector<Address> representatives;  // explicit policy only
    double tolerance = 1e-12;
    std::uint64_t seed = 0;
    std::size_t samples = 10000;
    std::string out = ".";
};

/// Throws ConfigError describing the first violated constraint.
void validate(const RunConfig& c);

/// Overlays the keys present in `j` on `base`. Unknown keys are rejected.
RunConfig merge_config(RunConfig base, const nlohmann::json& j);

nlohmann::json to_json(const RunConfig& c);

struct CheckRecord {
    std::string check;
    std::string location;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckRecord> records;

    std::size_t passed() const;
    std::size_t failed() const { return records.size() - passed(); }
    bool pass() const { return failed() == 0; }
    const CheckRecord* find(const std::string& check, const std::string& location = {}) const;
};

nlohmann::json to_json(const VerificationReport& r, const RunConfig& c);

/// Runs every check of the campaign in a fixed order.
VerificationReport run_verification(const RunConfig& c);

nlohmann::json hierarchy_document(const RunConfig& c);
nlohmann::json partition_document(const RunConfig& c);
nlohmann::json dendrite_document(const RunConfig& c);

} // namespace cantor
