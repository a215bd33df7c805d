// End-to-end acceptance gate: one pass/fail line per criterion, nonzero exit
// if any fails.

#include "qrel/frames.hpp"
#include "qrel/measurement.hpp"
#include "qrel/nested.hpp"
#include "qrel/rng.hpp"
#include "qrel/scenarios.hpp"
#include "qrel/state.hpp"
#include "qrel/transforms.hpp"
#include "qrel/wavepacket.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

namespace {

using namespace qrel;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int index, const char* title, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index, title,
                detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

// 1: every genuine superposition yields disagreeing internal/external
// descriptions, and the induced mutual-superposition graph is flagged.
void criterion_1() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;

    for (int i = 0; i < 20 && ok; ++i) {
        const double theta = (static_cast<double>(i) + 0.5) / 20.0 * std::numbers::pi / 2.0;
        const auto s0 = StateVector::superposition2(std::cos(theta), std::sin(theta));
        const auto result = chain::wigner_chain(s0, static_cast<std::uint64_t>(i));
        if (result.descriptions_coincide || result.e_view.outcome.has_value()) {
            ok = false;
            detail = "descriptions coincide at grid point " + std::to_string(i);
        }
    }

    frames::FrameGraph g({{"E", {}}, {"A", {}}}, {{"E", "A"}, {"A", "E"}}, {});
    const auto witnesses = frames::detect_intransitivity(g);
    bool found = false;
    for (const auto& [x, y] : witnesses)
        if (x == "E" && y == "A") found = true;
    if (!found) {
        ok = false;
        detail = "missing (E, A) witness";
    }

    const double elapsed = seconds_since(start);
    if (elapsed >= 1.0) {
        ok = false;
        detail = "too slow";
    }
    if (ok) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "20 grid points, %.3f s", elapsed);
        detail = buf;
    }
    report(1, "superposed descriptions disagree and the relation is intransitive", ok, detail);
}

// 2: forward/backward descriptions share amplitude moduli; the map is an
// involution on moduli.
void criterion_2() {
    SeededRng rng(2024);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto psi = StateVector::superposition2(
            Complex(normal(rng.engine()), normal(rng.engine())),
            Complex(normal(rng.engine()), normal(rng.engine())));
        const auto pair = frames::reciprocal_superposition(psi);
        const auto twice = frames::reciprocal_superposition(pair.backward);
        for (Eigen::Index i = 0; i < 2; ++i) {
            worst = std::max(worst, std::abs(std::norm(pair.forward.amplitudes[i]) -
                                             std::norm(pair.backward.amplitudes[i])));
            worst = std::max(worst, std::abs(std::abs(twice.backward.amplitudes[i]) -
                                             std::abs(psi.amplitudes[i])));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max deviation %.2e over 1000 states", worst);
    report(2, "reciprocal descriptions preserve amplitude moduli", worst < 1e-12, buf);
}

// 3: length dilation round trips and composes over mass triples.
void criterion_3() {
    SeededRng rng(3);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const double m1 = std::exp(8.0 * (rng.uniform() - 0.5));
        const double m2 = std::exp(8.0 * (rng.uniform() - 0.5));
        const double m3 = std::exp(8.0 * (rng.uniform() - 0.5));
        const double dx = 0.5 + rng.uniform();
        using transforms::dilate_length;
        worst = std::max(worst,
                         std::abs(dilate_length(dilate_length(dx, m1, m2), m2, m1) - dx) / dx);
        worst = std::max(worst, std::abs(dilate_length(dilate_length(dx, m1, m2), m2, m3) -
                                         dilate_length(dx, m1, m3)) /
                                    dx);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max relative error %.2e over 1000 triples", worst);
    report(3, "dilation round trips and composes", worst < 1e-12, buf);
}

// 4: the matter-wave product is frame independent, both in closed form and in
// the simulated interference patterns.
void criterion_4() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;

    SeededRng rng(4);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const double m_S = std::exp(10.0 * (rng.uniform() - 0.5));
        const double m_A = std::exp(10.0 * (rng.uniform() - 0.5));
        const double v = 0.1 + rng.uniform();
        const auto swap = transforms::frame_swap_debroglie(m_S, m_A, v);
        worst = std::max(worst, std::abs(transforms::debroglie_product(m_S, v, swap.lambda_forward) -
                                         constants::hbar) /
                                    constants::hbar);
        worst = std::max(worst, std::abs(transforms::debroglie_product(m_A, v, swap.lambda_backward) -
                                         constants::hbar) /
                                    constants::hbar);
    }
    if (worst >= 1e-9) {
        ok = false;
        detail = "closed-form product off by " + std::to_string(worst);
    }

    const wave::Grid1D grid(-2048.0, 2048.0, 4096);
    const wave::SlitConfig config{112.0, 4.0, 520.0, 0.125};
    double worst_spacing = 0.0;
    for (const double ratio : {1.0, 1e2, 1e4}) {
        const auto report_ = wave::frame_swapped_run(config, 1.0, ratio, grid, 1.0);
        const double rel = std::abs(report_.swapped.fringe_spacing -
                                    report_.expected_swapped_spacing) /
                           report_.expected_swapped_spacing;
        worst_spacing = std::max(worst_spacing, rel);
        if (rel >= 0.02) {
            ok = false;
            detail = "spacing off at mass ratio " + std::to_string(ratio);
        }
    }

    const double elapsed = seconds_since(start);
    if (elapsed >= 60.0) {
        ok = false;
        detail = "too slow";
    }
    if (ok) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "product err %.1e, spacing err %.1e%%, %.1f s", worst,
                      100.0 * worst_spacing, elapsed);
        detail = buf;
    }
    report(4, "matter-wave invariance holds across frame swaps", ok, detail);
}

// 5: the interval closes the 3-4-5 triangle; the two kinematic factors agree
// pointwise and share their singularities.
void criterion_5() {
    bool ok = true;
    std::string detail = "interval 5, factors agree on [0, 0.99]";

    if (std::abs(transforms::quantum_interval({3.0, 5.0, 1.0}) - 5.0) > 1e-15) {
        ok = false;
        detail = "3-4-5 interval failed";
    }
    for (int i = 0; i <= 99 && ok; ++i) {
        const double x = static_cast<double>(i) / 100.0;
        if (std::abs(transforms::delta_factor({1.0, 1.0, x, 1.0, 1.0}) -
                     transforms::gamma_factor(x, 1.0)) > 1e-12) {
            ok = false;
            detail = "factor mismatch at x = " + std::to_string(x);
        }
    }
    bool gamma_threw = false, delta_threw = false;
    try {
        transforms::gamma_factor(1.0, 1.0);
    } catch (const std::domain_error&) {
        gamma_threw = true;
    }
    try {
        transforms::delta_factor({1.0, 1.0, 1.5, 1.0, 1.0});
    } catch (const std::domain_error&) {
        delta_threw = true;
    }
    if (!gamma_threw || !delta_threw) {
        ok = false;
        detail = "singular inputs not rejected";
    }
    report(5, "interval arithmetic and kinematic factors", ok, detail);
}

// 6: free propagation matches the closed-form spreading law, conserves the
// norm, and reproduces the two-slit fringe law on a 4096-point grid.
void criterion_6() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;

    const wave::Grid1D grid(-256.0, 256.0, 2048);
    const auto p = wave::init_gaussian(grid, 0.0, 8.0, 0.0, 1.0, 1.0);
    const auto spread = wave::evolve_free(p, 0.02, 6400);
    const double sigma_rel = std::abs(spread.position_spread() - 8.0 * std::sqrt(2.0)) /
                             (8.0 * std::sqrt(2.0));
    if (sigma_rel >= 0.005) {
        ok = false;
        detail = "spreading off by " + std::to_string(sigma_rel);
    }

    const auto drifted = wave::evolve_free(p, 0.01, 10000);
    if (std::abs(drifted.norm_sq() - 1.0) >= 1e-10) {
        ok = false;
        detail = "norm drift";
    }

    const wave::Grid1D slit_grid(-2048.0, 2048.0, 4096);
    const wave::SlitConfig config{112.0, 4.0, 520.0, 0.125};
    const auto result = wave::double_slit(config, 1.0, slit_grid, 1.0);
    const double expected = result.wavelength * config.screen_distance / config.slit_separation;
    const double fringe_rel = std::abs(result.fringe_spacing - expected) / expected;
    if (fringe_rel >= 0.02) {
        ok = false;
        detail = "fringe spacing off by " + std::to_string(fringe_rel);
    }

    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) {
        ok = false;
        detail = "too slow";
    }
    if (ok) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "sigma err %.2e, fringe err %.2e, %.2f s", sigma_rel,
                      fringe_rel, elapsed);
        detail = buf;
    }
    report(6, "free propagation and interference fidelity", ok, detail);
}

// 7: the nested normalization axiom, its failure on longer chains, and the
// diffusion-constant fit on the single-pair reduction.
void criterion_7() {
    bool ok = true;
    std::string detail;

    const wave::Grid1D grid(-256.0, 256.0, 2048);
    const auto pair_packet = wave::init_gaussian(grid, 0.0, 8.0, 0.5, 1.0, 1.0);
    const nested::FrameChain two({"Q1", "Q2"}, {pair_packet});
    if (std::abs(nested::nested_norm(two) - 1.0) >= 1e-10) {
        ok = false;
        detail = "two-frame norm not 1";
    }

    const auto inner = wave::init_gaussian(grid, 0.0, 8.0, 0.25, 1.0, 1.0);  // k0 sigma0 = 2
    const nested::FrameChain three({"Q1", "Q2", "Q3"},
                                   {wave::init_gaussian(grid, 0.0, 8.0, 0.0, 1.0, 1.0), inner});
    const double value = nested::nested_norm(three);
    if (std::abs(value - 1.0) <= 0.01) {
        ok = false;
        detail = "three-frame value did not deviate";
    }

    nested::FrameChain chain = two;
    std::vector<nested::RelativeAmplitude> history;
    std::vector<double> times;
    for (int snap = 0; snap < 5; ++snap) {
        history.push_back(nested::compose_relative_amplitude(chain));
        times.push_back(0.01 * snap);
        chain = nested::evolve_chain(chain, 0.01, 1);
    }
    const auto fit = nested::fit_diffusion_constant(history, times);
    const double k_rel = std::abs(fit.k - Complex(0.0, 0.5)) / 0.5;
    if (k_rel >= 1e-4) {
        ok = false;
        detail = "fitted coefficient off by " + std::to_string(k_rel);
    }

    if (ok) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "three-frame value %.4f, fit err %.1e", value, k_rel);
        detail = buf;
    }
    report(7, "nested normalization and the diffusion fit", ok, detail);
}

// 8: identical config and seed reproduce outputs byte for byte.
void criterion_8() {
    namespace fs = std::filesystem;
    bool ok = true;
    std::string detail = "wigner_chain and double_slit outputs identical across reruns";

    const fs::path dir_a = fs::temp_directory_path() / "qrel_acceptance_a";
    const fs::path dir_b = fs::temp_directory_path() / "qrel_acceptance_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    fs::create_directories(dir_a);
    fs::create_directories(dir_b);

    const nlohmann::json configs[] = {
        {{"kind", "wigner_chain"},
         {"seed", 77},
         {"output_path", "chain.json"},
         {"params", {{"c1_re", 0.6}, {"c2_re", 0.8}, {"trials", 200}}}},
        {{"kind", "double_slit"},
         {"seed", 1},
         {"output_path", "slit.csv"},
         {"params",
          {{"grid", {{"x_min", -2048.0}, {"x_max", 2048.0}, {"n_points", 4096}}},
           {"slit",
            {{"separation", 112.0}, {"width", 4.0}, {"screen_distance", 520.0}, {"speed", 0.125}}},
           {"mass", 1.0},
           {"hbar", 1.0}}}}};

    for (const auto& config : configs) {
        const auto a = cli::run_scenario(config, std::nullopt, dir_a.string());
        const auto b = cli::run_scenario(config, std::nullopt, dir_b.string());
        if (a.exit_code != 0 || b.exit_code != 0 || a.output_files.size() != 1 ||
            b.output_files.size() != 1 || slurp(a.output_files[0]) != slurp(b.output_files[0])) {
            ok = false;
            detail = "rerun differed for " + config.at("kind").get<std::string>();
        }
    }
    report(8, "reruns are byte identical", ok, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures > 0) {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("acceptance: all 8 criteria hold\n");
    return 0;
}
