#include "qrel/scenarios.hpp"

#include "qrel/frames.hpp"
#include "qrel/measurement.hpp"
#include "qrel/nested.hpp"
#include "qrel/transforms.hpp"
#include "qrel/wavepacket.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

namespace qrel::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kKinds = {"wigner_chain", "basis_paradox", "double_slit",
                                      "frame_swap",   "chain_fit",     "relation_check",
                                      "transform_table"};

const json& require_field(const json& obj, const std::string& field, const std::string& kind) {
    if (!obj.contains(field))
        throw ConfigError("missing field '" + field + "' for " + kind);
    return obj.at(field);
}

double require_number(const json& obj, const std::string& field, const std::string& kind) {
    const json& v = require_field(obj, field, kind);
    if (!v.is_number()) throw ConfigError("field '" + field + "' must be a number for " + kind);
    return v.get<double>();
}

double optional_number(const json& obj, const std::string& field, double fallback) {
    if (!obj.contains(field)) return fallback;
    return obj.at(field).get<double>();
}

wave::Grid1D parse_grid(const json& params, const std::string& kind) {
    const json& g = require_field(params, "grid", kind);
    return wave::Grid1D(require_number(g, "x_min", kind), require_number(g, "x_max", kind),
                        static_cast<Eigen::Index>(require_number(g, "n_points", kind)));
}

wave::SlitConfig parse_slit(const json& params, const std::string& kind) {
    const json& s = require_field(params, "slit", kind);
    return wave::SlitConfig{require_number(s, "separation", kind),
                            require_number(s, "width", kind),
                            require_number(s, "screen_distance", kind),
                            require_number(s, "speed", kind)};
}

Complex parse_coeff(const json& params, const std::string& re_key, const std::string& im_key,
                    const std::string& kind) {
    return Complex(require_number(params, re_key, kind), optional_number(params, im_key, 0.0));
}

json amplitudes_to_json(const StateVector& psi) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < psi.dim(); ++i)
        arr.push_back({{"im", psi.amplitudes[i].imag()}, {"re", psi.amplitudes[i].real()}});
    return arr;
}

json record_to_json(const chain::MeasurementRecord& r) {
    json j;
    j["observer"] = r.observer;
    j["observed"] = r.observed;
    j["time"] = r.time;
    if (r.outcome) j["outcome"] = *r.outcome;
    else j["outcome"] = "unresolved";
    j["amplitudes"] = amplitudes_to_json(r.state);
    return j;
}

struct Output {
    std::string path;
    std::string contents;
};

struct ScenarioOutput {
    std::string summary_metric;
    std::vector<Output> outputs;
};

ScenarioOutput run_wigner_chain(const json& params, std::uint64_t seed,
                                const std::string& output_path) {
    const Complex c1 = parse_coeff(params, "c1_re", "c1_im", "wigner_chain");
    const Complex c2 = parse_coeff(params, "c2_re", "c2_im", "wigner_chain");
    const auto trials = static_cast<int>(optional_number(params, "trials", 1));
    const StateVector s0 = StateVector::superposition2(c1, c2);

    const auto result = chain::wigner_chain(s0, seed);
    json report;
    report["records"] = json::array();
    for (const auto& r : result.records()) report["records"].push_back(record_to_json(r));
    report["descriptions_coincide"] = result.descriptions_coincide;

    if (trials > 1) {
        int up = 0;
        for (int t = 0; t < trials; ++t)
            if (*chain::wigner_chain(s0, seed + static_cast<std::uint64_t>(t)).sa_view.outcome == 0)
                ++up;
        report["branch0_frequency"] = static_cast<double>(up) / trials;
        report["trials"] = trials;
    }

    char metric[96];
    std::snprintf(metric, sizeof(metric), "coincide=%s",
                  result.descriptions_coincide ? "true" : "false");
    return {metric, {{output_path, report.dump(2) + "\n"}}};
}

ScenarioOutput run_basis_paradox(const json& params, const std::string& output_path) {
    const Complex c1 = parse_coeff(params, "c1_re", "c1_im", "basis_paradox");
    const Complex c2 = parse_coeff(params, "c2_re", "c2_im", "basis_paradox");
    const StateVector psi_t = chain::premeasure(StateVector::superposition2(c1, c2), 3);
    const auto rewrite = chain::rewrite_basis_paradox(psi_t);

    auto coeffs_to_json = [](const std::vector<Complex>& cs) {
        json arr = json::array();
        for (const auto& c : cs) arr.push_back({{"im", c.imag()}, {"re", c.real()}});
        return arr;
    };
    json report;
    report["original_coeffs"] = coeffs_to_json(rewrite.original_coeffs);
    report["rewritten_coeffs"] = coeffs_to_json(rewrite.rewritten_coeffs);
    report["overlap"] = overlap_mod(psi_t, change_basis(rewrite.rewritten, 0,
                                                        Operator(Operator::hadamard().entries.adjoint())));
    return {"rewritten", {{output_path, report.dump(2) + "\n"}}};
}

ScenarioOutput run_double_slit(const json& params, const std::string& output_path) {
    const auto grid = parse_grid(params, "double_slit");
    const auto slit = parse_slit(params, "double_slit");
    const double mass = require_number(params, "mass", "double_slit");
    const double hbar = optional_number(params, "hbar", constants::hbar);

    const auto result = wave::double_slit(slit, mass, grid, hbar);
    char metric[96];
    std::snprintf(metric, sizeof(metric), "fringe_spacing=%.6g", result.fringe_spacing);
    return {metric, {{output_path, wave::intensity_csv(result)}}};
}

ScenarioOutput run_frame_swap(const json& params, const std::string& output_path) {
    const auto grid = parse_grid(params, "frame_swap");
    const auto slit = parse_slit(params, "frame_swap");
    const double m_S = require_number(params, "m_S", "frame_swap");
    const double m_A = require_number(params, "m_A", "frame_swap");
    const double hbar = optional_number(params, "hbar", constants::hbar);

    const auto report = wave::frame_swapped_run(slit, m_S, m_A, grid, hbar);
    json j;
    j["debroglie_backward"] = report.debroglie_backward;
    j["debroglie_forward"] = report.debroglie_forward;
    j["dilation_factor"] = report.dilation_factor;
    j["expected_swapped_spacing"] = report.expected_swapped_spacing;
    j["hbar"] = report.hbar;
    j["lab_fringe_spacing"] = report.lab.fringe_spacing;
    j["swapped_fringe_spacing"] = report.swapped.fringe_spacing;

    char metric[128];
    std::snprintf(metric, sizeof(metric), "spacing_ratio=%.6g (expected %.6g)",
                  report.swapped.fringe_spacing / report.lab.fringe_spacing,
                  report.dilation_factor);
    return {metric, {{output_path, j.dump(2) + "\n"}}};
}

ScenarioOutput run_chain_fit(const json& params, const std::string& output_path) {
    const json& masses = require_field(params, "masses", "chain_fit");
    const json& pair_init = require_field(params, "pair_init", "chain_fit");
    const auto grid = parse_grid(params, "chain_fit");
    const double dt = require_number(params, "dt", "chain_fit");
    const auto steps = static_cast<Eigen::Index>(require_number(params, "steps", "chain_fit"));
    const auto snapshots = static_cast<int>(require_number(params, "snapshots", "chain_fit"));
    const double hbar = optional_number(params, "hbar", 1.0);
    if (masses.size() != pair_init.size() || masses.empty())
        throw ConfigError("chain_fit: 'masses' and 'pair_init' must have equal nonzero length");
    if (snapshots < 3) throw ConfigError("chain_fit: 'snapshots' must be >= 3");

    std::vector<wave::WavePacket> packets;
    std::vector<std::string> names;
    names.push_back("Q1");
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const json& init = pair_init.at(i);
        packets.push_back(wave::init_gaussian(grid, require_number(init, "x0", "chain_fit"),
                                              require_number(init, "sigma0", "chain_fit"),
                                              require_number(init, "k0", "chain_fit"),
                                              masses.at(i).get<double>(), hbar));
        names.push_back("Q" + std::to_string(i + 2));
    }
    nested::FrameChain chain_state(names, packets);

    std::vector<nested::RelativeAmplitude> history;
    std::vector<double> times;
    for (int snap = 0; snap < snapshots; ++snap) {
        history.push_back(nested::compose_relative_amplitude(chain_state));
        times.push_back(static_cast<double>(snap) * dt * static_cast<double>(steps));
        if (snap + 1 < snapshots) chain_state = nested::evolve_chain(chain_state, dt, steps);
    }
    const auto fit = nested::fit_diffusion_constant(history, times);

    json j;
    j["k_im"] = fit.k.imag();
    j["k_re"] = fit.k.real();
    j["residual"] = fit.residual;
    char metric[96];
    std::snprintf(metric, sizeof(metric), "k=%.6g%+.6gi residual=%.3g", fit.k.real(),
                  fit.k.imag(), fit.residual);
    return {metric, {{output_path, j.dump(2) + "\n"}}};
}

ScenarioOutput run_relation_check(const json& params, const std::string& output_path) {
    const json& jg = require_field(params, "graph", "relation_check");
    frames::FrameGraph graph = jg.get<frames::FrameGraph>();

    const auto violations = frames::check_equivalence(graph);
    const auto witnesses = frames::detect_intransitivity(graph);

    json j;
    j["equivalence_violations"] = json::array();
    for (const auto& v : violations) {
        const char* kind = v.kind == frames::ViolationKind::Reflexivity ? "reflexivity"
                           : v.kind == frames::ViolationKind::Symmetry  ? "symmetry"
                                                                        : "transitivity";
        j["equivalence_violations"].push_back({{"kind", kind}, {"witnesses", v.witnesses}});
    }
    j["intransitivity_witnesses"] = json::array();
    for (const auto& [a, b] : witnesses) j["intransitivity_witnesses"].push_back({a, b});

    char metric[96];
    std::snprintf(metric, sizeof(metric), "violations=%zu witnesses=%zu", violations.size(),
                  witnesses.size());
    return {metric, {{output_path, j.dump(2) + "\n"}}};
}

ScenarioOutput run_transform_table(const json& params, const std::string& output_path) {
    const json table = transform_table(params);
    char metric[64];
    std::snprintf(metric, sizeof(metric), "rows=%zu", table.at("mass_rows").size());
    return {metric, {{output_path, table.dump(2) + "\n"}}};
}

} // namespace

json transform_table(const json& config) {
    const json& mass_pairs = require_field(config, "mass_pairs", "transform_table");
    const json& energies = require_field(config, "energies", "transform_table");
    const double t = optional_number(config, "t", 1.0);
    const double h = optional_number(config, "h", constants::hbar);
    const double v = optional_number(config, "v", 1.0);
    const double hbar = optional_number(config, "hbar", constants::hbar);

    json mass_rows = json::array();
    for (const auto& pair : mass_pairs) {
        const double m_S = pair.at(0).get<double>();
        const double m_A = pair.at(1).get<double>();
        if (m_S <= 0.0 || m_A <= 0.0) throw ConfigError("transform_table: masses must be positive");
        const auto swap = transforms::frame_swap_debroglie(m_S, m_A, v, hbar);
        mass_rows.push_back({{"debroglie_backward",
                              transforms::debroglie_product(m_A, v, swap.lambda_backward)},
                             {"debroglie_forward",
                              transforms::debroglie_product(m_S, v, swap.lambda_forward)},
                             {"dilation", transforms::dilate_length(1.0, m_S, m_A)},
                             {"m_A", m_A},
                             {"m_S", m_S}});
    }

    json energy_rows = json::array();
    for (const auto& je : energies) {
        const double e = je.get<double>();
        if (e < 0.0) throw ConfigError("transform_table: energies must be non-negative");
        transforms::TransformParams p{1.0, 1.0, e, t, h};
        const double x = e * t / h;
        json row{{"E_q", e}, {"x", x}};
        row["delta"] = transforms::delta_factor(p);
        row["gamma_at_same_ratio"] = transforms::gamma_factor(x, 1.0);
        energy_rows.push_back(row);
    }

    json out;
    out["energy_rows"] = energy_rows;
    out["mass_rows"] = mass_rows;
    return out;
}

RunResult run_scenario(const json& config, std::optional<std::uint64_t> seed_override,
                       std::optional<std::string> out_dir) {
    RunResult result;
    try {
        if (!config.is_object()) throw ConfigError("config must be a JSON object");
        const std::string kind = require_field(config, "kind", "scenario").get<std::string>();
        if (!kKinds.count(kind)) throw ConfigError("unrecognized scenario kind '" + kind + "'");
        const json params = config.value("params", json::object());
        std::uint64_t seed = config.value("seed", 0ULL);
        if (seed_override) seed = *seed_override;
        std::string output_path = config.value("output_path", kind + ".out");
        if (out_dir)
            output_path = (std::filesystem::path(*out_dir) / output_path).string();

        ScenarioOutput out;
        if (kind == "wigner_chain") out = run_wigner_chain(params, seed, output_path);
        else if (kind == "basis_paradox") out = run_basis_paradox(params, output_path);
        else if (kind == "double_slit") out = run_double_slit(params, output_path);
        else if (kind == "frame_swap") out = run_frame_swap(params, output_path);
        else if (kind == "chain_fit") out = run_chain_fit(params, output_path);
        else if (kind == "relation_check") out = run_relation_check(params, output_path);
        else out = run_transform_table(params, output_path);

        for (const auto& o : out.outputs) {
            std::ofstream f(o.path, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open output file: " + o.path);
            f << o.contents;
            result.output_files.push_back(o.path);
        }
        result.summary = kind + ": " + out.summary_metric + "; wrote " +
                         (out.outputs.empty() ? "nothing" : out.outputs.front().path);
        result.exit_code = 0;
    } catch (const ConfigError& e) {
        result.exit_code = 2;
        result.summary = std::string("config error: ") + e.what();
    } catch (const nlohmann::json::exception& e) {
        result.exit_code = 2;
        result.summary = std::string("config error: ") + e.what();
    } catch (const std::domain_error& e) {
        result.exit_code = 1;
        result.summary = std::string("precondition failure: ") + e.what();
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.summary = std::string("error: ") + e.what();
    }
    return result;
}

RunResult run_scenario_file(const std::string& path, std::optional<std::uint64_t> seed_override,
                            std::optional<std::string> out_dir) {
    std::ifstream f(path);
    if (!f) return RunResult{2, "config error: cannot open " + path, {}};
    json config;
    try {
        config = json::parse(f);
    } catch (const json::parse_error& e) {
        return RunResult{2, std::string("config error: ") + e.what(), {}};
    }
    return run_scenario(config, seed_override, out_dir);
}

} // namespace qrel::cli
