#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "igeo/model.hpp"
#include "igeo/numerics.hpp"

namespace igeo::cli {

/// Configuration or usage error; maps to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct TauGrid {
    double start = 0.0;
    double stop = 20.0;
    int count = 201;
    bool log_spacing = false;

    std::vector<double> values() const;
};

struct SweepSpec {
    std::string parameter;  // one of: r, lambda, xi (applied to all pairs)
    std::vector<double> values;
    std::string command = "complexity";  // command executed per value
};

struct OutputSpec {
    std::string path;            // empty = stdout
    std::string format = "csv";  // csv | json
};

struct EmbeddingConfig {
    double a1 = 1.0;
    double a2 = 2.0;
};

struct RunConfig {
    ModelParams params = ModelParams::uniform(1, 0.5, 1.0, 8.0);
    std::optional<TauGrid> tau_grid;  // per-command default when absent
    ToleranceSpec tol;
    std::vector<double> sigma_grid = {0.5, 1.0, 2.0, 5.0, 10.0};  // curvature sampling
    std::optional<SweepSpec> sweep;
    OutputSpec output;
    std::optional<EmbeddingConfig> embedding;
    int jobs = 0;  // 0 = hardware concurrency

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;  // throws ConfigError

    /// The tau grid for a command: the configured one, or the command's
    /// default (geodesic/jacobi: linear [0,20]x201; complexity: log [1,1e4]x129).
    TauGrid resolved_tau_grid(const std::string& command) const;
};

/// Full CLI entry point; returns the process exit code
/// (0 success, 2 validation error, 3 numerical failure).
int run_main(int argc, char** argv);

}  // namespace igeo::cli
