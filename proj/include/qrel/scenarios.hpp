#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrel::cli {

/// Malformed or incomplete scenario configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunResult {
    int exit_code = 0; // 0 ok, 1 precondition failure, 2 config error
    std::string summary;
    std::vector<std::string> output_files;
};

/// Execute one scenario config: {"kind": .., "seed": .., "output_path": ..,
/// "params": {..}}. The optional seed override takes precedence over the
/// config; out_dir redirects the output path.
RunResult run_scenario(const nlohmann::json& config,
                       std::optional<std::uint64_t> seed_override = std::nullopt,
                       std::optional<std::string> out_dir = std::nullopt);

RunResult run_scenario_file(const std::string& path,
                            std::optional<std::uint64_t> seed_override = std::nullopt,
                            std::optional<std::string> out_dir = std::nullopt);

/// Dilation factors, de Broglie products and delta/gamma values for a sweep
/// of mass pairs and relative energies.
nlohmann::json transform_table(const nlohmann::json& config);

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct VerifyOptions {
    /// Multiplies every tolerance; test fixtures corrupt this to provoke
    /// named failures.
    double tolerance_scale = 1.0;
};

/// The cross-module invariant suite behind `qrel verify`.
std::vector<CheckResult> verify_all(const VerifyOptions& options = {});

} // namespace qrel::cli
