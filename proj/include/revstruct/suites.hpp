// Named verification suites over all modules, the JSON run report, and
// PGM/CSV frame export for the Baker partition evolution and theta stripes.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "revstruct/core.hpp"

namespace revstruct::suites {

struct SuiteConfig {
    std::string suite = "all";
    std::size_t samples = 1000;
    std::uint64_t seed = 20001227;
    std::map<std::string, double> tolerance_overrides;  // law_id -> tolerance
};

struct RunReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<core::VerificationReport> reports;  // sorted by law_id
    double duration_ms = 0.0;
    bool passed = false;

    nlohmann::ordered_json to_json() const;
};

std::vector<std::string> suite_names();  // includes "all"

// Runs every check registered for the suite; deterministic given the seed.
// Throws std::invalid_argument on unknown suite, zero samples or negative
// tolerance overrides (usage errors).
RunReport run_suite(const SuiteConfig& cfg);

struct FrameRequest {
    std::string kind;            // "partition_evolution" or "theta"
    int t = 0;                   // partition time
    std::vector<int> theta_set;  // F for theta frames
    int resolution_exponent = 6;
    std::filesystem::path out_dir;
};

// Raised on filesystem failures so the CLI can map them to exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes one PGM (P2, 0/255) and one CSV ("x,y,value", values +-1) frame;
// returns the paths written.
std::vector<std::filesystem::path> export_frames(const FrameRequest& req);

}  // namespace revstruct::suites
