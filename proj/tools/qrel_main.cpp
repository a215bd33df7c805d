#include "qrel/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    CLI::App app{"qrel: quantum reference-frame scenario runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;

    auto* run = app.add_subcommand("run", "Run one scenario config");
    run->add_option("config", config_path, "Scenario JSON config")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--out", out_dir, "Directory for output files");

    auto* verify = app.add_subcommand("verify", "Run the cross-module invariant suite");

    std::string table_path;
    auto* table = app.add_subcommand("transform-table",
                                     "Tabulate dilation, de Broglie and delta/gamma sweeps");
    table->add_option("config", table_path, "Sweep JSON config")->required();
    table->add_option("--out", out_dir, "Directory for output files");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        const auto result = qrel::cli::run_scenario_file(config_path, seed, out_dir);
        std::cout << result.summary << "\n";
        return result.exit_code;
    }

    if (verify->parsed()) {
        const auto results = qrel::cli::verify_all();
        bool all_pass = true;
        for (const auto& r : results) {
            std::printf("%-4s %-50s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                        r.detail.c_str());
            all_pass = all_pass && r.pass;
        }
        if (!all_pass) {
            std::printf("verify: FAILED\n");
            return 1;
        }
        std::printf("verify: all %zu invariants hold\n", results.size());
        return 0;
    }

    // transform-table
    std::ifstream f(table_path);
    if (!f) {
        std::cerr << "config error: cannot open " << table_path << "\n";
        return 2;
    }
    try {
        const auto config = nlohmann::json::parse(f);
        const auto result = qrel::cli::transform_table(config);
        std::cout << result.dump(2) << "\n";
        return 0;
    } catch (const qrel::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
