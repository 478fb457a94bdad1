// revstruct: run verification suites over the time-reversal structures and
// export Baker partition / theta stripe frames.
//
// Exit codes: 0 all checks passed, 1 verification failure, 2 usage error,
// 3 I/O failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "revstruct/suites.hpp"

namespace {

int parse_tolerances(const std::vector<std::string>& entries,
                     std::map<std::string, double>& out) {
    for (const auto& e : entries) {
        auto eq = e.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "bad --tol entry (want law=value): " << e << "\n";
            return 1;
        }
        try {
            out[e.substr(0, eq)] = std::stod(e.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "bad --tol value: " << e << "\n";
            return 1;
        }
    }
    return 0;
}

std::vector<int> parse_index_set(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"revstruct: mechanical verification of time-reversal structures"};

    std::string suite;
    std::int64_t samples = -1;
    std::string seed_text;
    std::vector<std::string> tol_entries;
    std::string out_path;
    std::string config_path;
    std::string export_kind;
    int frame_t = 0;
    std::string theta_set_text;
    int resolution = 6;
    std::string frames_dir = "frames";

    app.add_option("--suite", suite, "suite to run: involution, symplectic, bernoulli, baker, aging, densities, all");
    app.add_option("--samples", samples, "sample count for randomized checks");
    app.add_option("--seed", seed_text, "master seed (default: env REVSTRUCT_SEED or 20001227)");
    app.add_option("--tol", tol_entries, "tolerance override law=value (repeatable)");
    app.add_option("--out", out_path, "write the JSON report here (default: stdout)");
    app.add_option("--config", config_path, "JSON config file; explicit flags override it");
    app.add_option("--export", export_kind, "export frames instead: partition_evolution or theta");
    app.add_option("--t", frame_t, "partition-evolution time step");
    app.add_option("--theta-set", theta_set_text, "theta index set, e.g. \"-2,1\"");
    app.add_option("--resolution", resolution, "frame resolution exponent k (2^k x 2^k, k <= 10)");
    app.add_option("--frames-dir", frames_dir, "output directory for frames");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    revstruct::suites::SuiteConfig cfg;

    // defaults < env < config file < flags
    if (const char* env_seed = std::getenv("REVSTRUCT_SEED")) {
        try {
            cfg.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            std::cerr << "REVSTRUCT_SEED is not an integer\n";
            return 2;
        }
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config file " << config_path << "\n";
            return 3;
        }
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            std::cerr << "malformed config: " << e.what() << "\n";
            return 2;
        }
        if (j.contains("suite") && suite.empty()) suite = j["suite"].get<std::string>();
        if (j.contains("samples") && samples < 0) samples = j["samples"].get<std::int64_t>();
        if (j.contains("seed") && seed_text.empty()) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("out") && out_path.empty()) out_path = j["out"].get<std::string>();
        if (j.contains("tolerances"))
            for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
                cfg.tolerance_overrides[it.key()] = it.value().get<double>();
    }
    if (!seed_text.empty()) {
        try {
            cfg.seed = std::stoull(seed_text);
        } catch (const std::exception&) {
            std::cerr << "--seed is not an integer\n";
            return 2;
        }
    }
    if (!suite.empty()) cfg.suite = suite;
    if (samples >= 0) {
        if (samples == 0) {
            std::cerr << "--samples must be >= 1\n";
            return 2;
        }
        cfg.samples = static_cast<std::size_t>(samples);
    }
    if (parse_tolerances(tol_entries, cfg.tolerance_overrides) != 0) return 2;

    if (!export_kind.empty()) {
        revstruct::suites::FrameRequest req;
        req.kind = export_kind;
        req.t = frame_t;
        req.resolution_exponent = resolution;
        req.out_dir = frames_dir;
        if (!theta_set_text.empty()) {
            try {
                req.theta_set = parse_index_set(theta_set_text);
            } catch (const std::exception&) {
                std::cerr << "bad --theta-set\n";
                return 2;
            }
        }
        try {
            auto files = revstruct::suites::export_frames(req);
            for (const auto& f : files) std::cout << f.string() << "\n";
            return 0;
        } catch (const revstruct::suites::IoError& e) {
            std::cerr << "I/O error: " << e.what() << "\n";
            return 3;
        } catch (const std::invalid_argument& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
        }
    }

    revstruct::suites::RunReport report;
    try {
        report = revstruct::suites::run_suite(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    std::string body = report.to_json().dump(2);
    body.push_back('\n');
    if (out_path.empty() || out_path == "-") {
        std::cout << body;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open " << out_path << " for writing\n";
            return 3;
        }
        out << body;
        if (!out) {
            std::cerr << "failed writing " << out_path << "\n";
            return 3;
        }
    }

    for (const auto& r : report.reports)
        std::cerr << (r.passed ? "pass " : "FAIL ") << r.law_id
                  << "  max_violation=" << r.max_violation << " tol=" << r.tolerance << "\n";
    return report.passed ? 0 : 1;
}
