#include "qrel/frames.hpp"
#include "qrel/measurement.hpp"
#include "qrel/nested.hpp"
#include "qrel/rng.hpp"
#include "qrel/scenarios.hpp"
#include "qrel/transforms.hpp"
#include "qrel/wavepacket.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>

namespace qrel::cli {

namespace {

struct Suite {
    double tol_scale;
    std::vector<CheckResult> results;

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({name, pass, detail});
    }

    void run(const std::string& name, const std::function<bool(std::string&)>& fn) {
        std::string detail;
        bool pass = false;
        try {
            pass = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        results.push_back({name, pass, detail});
    }
};

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

StateVector random_state(std::vector<Eigen::Index> dims, SeededRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Index dim = 1;
    for (Eigen::Index d : dims) dim *= d;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v[i] = Complex(normal(rng.engine()), normal(rng.engine()));
    v /= v.norm();
    return StateVector(v, std::move(dims));
}

frames::FrameGraph random_graph(std::size_t n_frames, double edge_prob, SeededRng& rng) {
    std::vector<frames::FrameId> frames;
    for (std::size_t i = 0; i < n_frames; ++i) frames.push_back({"F" + std::to_string(i), {}});
    std::set<frames::Edge> q, phys;
    for (std::size_t i = 0; i < n_frames; ++i)
        for (std::size_t j = 0; j < n_frames; ++j) {
            if (rng.uniform() < edge_prob) q.insert({frames[i].name, frames[j].name});
            if (rng.uniform() < edge_prob) phys.insert({frames[i].name, frames[j].name});
        }
    return frames::FrameGraph(std::move(frames), std::move(q), std::move(phys));
}

frames::FrameGraph closure_of(const frames::FrameGraph& g) {
    std::set<frames::Edge> closed = g.phys_edges();
    for (const auto& f : g.frames()) closed.insert({f.name, f.name});
    for (const auto& [a, b] : std::set<frames::Edge>(closed)) closed.insert({b, a});
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<frames::Edge> next = closed;
        for (const auto& [a, b] : closed)
            for (const auto& [b2, c] : closed)
                if (b2 == b && !next.count({a, c})) {
                    next.insert({a, c});
                    next.insert({c, a});
                    changed = true;
                }
        closed = std::move(next);
    }
    return frames::FrameGraph(g.frames(), g.q_edges(), std::move(closed));
}

} // namespace

std::vector<CheckResult> verify_all(const VerifyOptions& options) {
    Suite suite{options.tolerance_scale, {}};
    const double ts = options.tolerance_scale;

    // ---- hilbert-core ----
    suite.run("hilbert.norm_chain_1000_unitaries", [&](std::string& detail) {
        SeededRng rng(11);
        StateVector psi = random_state({3}, rng);
        for (int i = 0; i < 1000; ++i)
            psi = apply_unitary(Operator::random_unitary(3, 1000 + static_cast<std::uint64_t>(i)), psi);
        const double drift = std::abs(psi.norm_sq() - 1.0);
        detail = "drift " + fmt(drift);
        return drift < 1e-10 * ts;
    });

    suite.run("hilbert.basis_change_no_signaling", [&](std::string& detail) {
        SeededRng rng(12);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            StateVector a = random_state({2}, rng);
            StateVector b = random_state({3}, rng);
            StateVector joint = tensor_product(a, b);
            joint = apply_unitary(Operator::random_unitary(6, 300 + static_cast<std::uint64_t>(trial)), joint);
            const auto before = born_distribution(joint, 0, Operator::spin_z());
            const StateVector rotated =
                change_basis(joint, 1, Operator::random_unitary(3, 600 + static_cast<std::uint64_t>(trial)));
            const auto after = born_distribution(rotated, 0, Operator::spin_z());
            for (std::size_t i = 0; i < before.size(); ++i)
                worst = std::max(worst, std::abs(before[i] - after[i]));
        }
        detail = "max distribution shift " + fmt(worst);
        return worst < 1e-12 * ts;
    });

    suite.run("hilbert.repeated_measurement_agrees", [&](std::string& detail) {
        SeededRng rng(13);
        for (int trial = 0; trial < 50; ++trial) {
            StateVector psi = random_state({2, 2}, rng);
            const auto first = measure(psi, 0, Operator::spin_z(), static_cast<std::uint64_t>(trial));
            const auto again = collapse_onto(first.collapsed, 0, Operator::spin_z(),
                                             first.eigenspace_index);
            if (std::abs(again.probability - 1.0) > 1e-12 * ts ||
                again.outcome != first.outcome) {
                detail = "repeat probability " + fmt(again.probability);
                return false;
            }
        }
        return true;
    });

    suite.run("hilbert.reduced_of_product_is_projector", [&](std::string& detail) {
        SeededRng rng(14);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            StateVector a = random_state({3}, rng);
            StateVector b = random_state({2}, rng);
            const DensityMatrix rho = reduced_state(tensor_product(a, b), {0});
            const Eigen::MatrixXcd projector = a.amplitudes * a.amplitudes.adjoint();
            worst = std::max(worst, (rho.entries - projector).cwiseAbs().maxCoeff());
        }
        detail = "max deviation " + fmt(worst);
        return worst < 1e-12 * ts;
    });

    // ---- measurement-chain ----
    suite.run("chain.project_chain_branches_correlated", [&](std::string& detail) {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const StateVector psi = chain::premeasure(
                StateVector::superposition2(0.6, Complex(0.0, 0.8)), 3);
            const auto pc = chain::project_chain(psi, seed);
            for (Eigen::Index i = 0; i < 2; ++i) {
                if (i == pc.branch) continue;
                for (Eigen::Index j = 0; j < 3; ++j)
                    worst = std::max(worst, std::abs(pc.final.amplitudes[i * 3 + j]));
            }
        }
        detail = "max cross-branch amplitude " + fmt(worst);
        return worst < 1e-12 * ts;
    });

    suite.run("chain.rewrite_preserves_state", [&](std::string& detail) {
        SeededRng rng(15);
        double worst = 1.0;
        for (int trial = 0; trial < 50; ++trial) {
            const StateVector s0 = random_state({2}, rng);
            const StateVector psi = chain::premeasure(s0, 3);
            const auto rewrite = chain::rewrite_basis_paradox(psi);
            const StateVector back = apply_on_subsystem(Operator::hadamard(), rewrite.rewritten, 0);
            worst = std::min(worst, overlap_mod(psi, back));
        }
        detail = "min overlap " + fmt(worst);
        return worst > 1.0 - 1e-12 * ts;
    });

    suite.run("chain.branch_frequencies_born", [&](std::string& detail) {
        const int n = 10000;
        const StateVector psi = chain::premeasure(StateVector::superposition2(0.6, 0.8), 3);
        int branch0 = 0;
        for (int i = 0; i < n; ++i)
            if (chain::project_chain(psi, static_cast<std::uint64_t>(i)).branch == 0) ++branch0;
        const double freq = static_cast<double>(branch0) / n;
        detail = "branch-0 frequency " + fmt(freq) + " (expect 0.36)";
        return std::abs(freq - 0.36) < 5.0 / std::sqrt(static_cast<double>(n)) * ts;
    });

    suite.run("chain.dephase_positive_trace_preserving", [&](std::string& detail) {
        SeededRng rng(16);
        double worst_eig = 0.0, worst_trace = 0.0;
        for (double strength : {0.0, 0.3, 0.7, 1.0}) {
            StateVector joint = random_state({2, 3}, rng);
            const DensityMatrix rho = reduced_state(joint, {0});
            const Operator rot = Operator::random_unitary(2, 77);
            const Operator pointer(rot.entries * Operator::spin_z().entries *
                                   rot.entries.adjoint());
            const DensityMatrix out = chain::dephase(rho, pointer, strength);
            worst_trace = std::max(worst_trace, std::abs(out.trace_real() - 1.0));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.entries);
            worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
        }
        detail = "min eigenvalue " + fmt(worst_eig) + ", trace drift " + fmt(worst_trace);
        return worst_eig > -1e-12 * ts && worst_trace < 1e-12 * ts;
    });

    // ---- frame-relations ----
    suite.run("frames.closure_has_no_violations", [&](std::string& detail) {
        SeededRng rng(17);
        std::size_t total = 0;
        for (int trial = 0; trial < 10; ++trial) {
            const auto g = closure_of(random_graph(6, 0.2, rng));
            total += frames::check_equivalence(g).size();
        }
        detail = std::to_string(total) + " violations on closed graphs";
        return total == 0;
    });

    suite.run("frames.intransitivity_matches_reflexive_restriction", [&](std::string& detail) {
        SeededRng rng(18);
        for (int trial = 0; trial < 100; ++trial) {
            const auto g = random_graph(8, 0.25, rng);
            const bool empty = frames::detect_intransitivity(g).empty();
            // Independent reading: among mutually q-related pairs, every
            // participant must be q-related to itself.
            bool expected_empty = true;
            for (const auto& [x, y] : g.q_edges())
                if (x != y && g.q_edges().count({y, x}) && !g.q_edges().count({x, x}))
                    expected_empty = false;
            if (empty != expected_empty) {
                detail = "mismatch on trial " + std::to_string(trial);
                return false;
            }
        }
        return true;
    });

    suite.run("frames.reciprocal_involution_on_moduli", [&](std::string& detail) {
        SeededRng rng(19);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const StateVector forward = random_state({2}, rng);
            const auto pair = frames::reciprocal_superposition(forward);
            const auto twice = frames::reciprocal_superposition(pair.backward);
            for (Eigen::Index i = 0; i < 2; ++i) {
                worst = std::max(worst, std::abs(std::abs(pair.backward.amplitudes[i]) -
                                                 std::abs(forward.amplitudes[i])));
                worst = std::max(worst, std::abs(std::abs(twice.backward.amplitudes[i]) -
                                                 std::abs(forward.amplitudes[i])));
            }
        }
        detail = "max modulus drift " + fmt(worst);
        return worst < 1e-12 * ts;
    });

    suite.run("frames.backward_collapse_matches_branch", [&](std::string& detail) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const StateVector psi = chain::premeasure(StateVector::superposition2(0.6, 0.8), 3);
            const auto pc = chain::project_chain(psi, seed);
            const StateVector s_collapsed = StateVector::basis(2, pc.branch);
            const auto pair = frames::reciprocal_superposition(s_collapsed);
            Eigen::Index argmax = 0;
            pair.backward.amplitudes.cwiseAbs().maxCoeff(&argmax);
            if (argmax != pc.branch) {
                detail = "branch mismatch at seed " + std::to_string(seed);
                return false;
            }
        }
        return true;
    });

    // ---- qrel-transforms ----
    suite.run("transforms.dilation_round_trip_and_composition", [&](std::string& detail) {
        SeededRng rng(20);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const double m1 = std::exp(10.0 * (rng.uniform() - 0.5));
            const double m2 = std::exp(10.0 * (rng.uniform() - 0.5));
            const double m3 = std::exp(10.0 * (rng.uniform() - 0.5));
            const double dx = 1.0 + rng.uniform();
            const double round = transforms::dilate_length(
                transforms::dilate_length(dx, m1, m2), m2, m1);
            worst = std::max(worst, std::abs(round - dx) / dx);
            const double composed = transforms::dilate_length(
                transforms::dilate_length(dx, m1, m2), m2, m3);
            const double direct = transforms::dilate_length(dx, m1, m3);
            worst = std::max(worst, std::abs(composed - direct) / direct);
        }
        detail = "max relative error " + fmt(worst);
        return worst < 1e-12 * ts;
    });

    suite.run("transforms.debroglie_products_equal_hbar", [&](std::string& detail) {
        SeededRng rng(21);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const double m_S = std::exp(20.0 * (rng.uniform() - 0.5));
            const double m_A = std::exp(20.0 * (rng.uniform() - 0.5));
            const double v = std::exp(6.0 * (rng.uniform() - 0.5));
            const auto swap = transforms::frame_swap_debroglie(m_S, m_A, v);
            worst = std::max(worst,
                             std::abs(transforms::debroglie_product(m_S, v, swap.lambda_forward) -
                                      constants::hbar) / constants::hbar);
            worst = std::max(worst,
                             std::abs(transforms::debroglie_product(m_A, v, swap.lambda_backward) -
                                      constants::hbar) / constants::hbar);
        }
        detail = "max relative error " + fmt(worst);
        return worst < 1e-9 * ts;
    });

    suite.run("transforms.interval_symmetry", [&](std::string& detail) {
        SeededRng rng(22);
        double worst = 0.0;
        for (int trial = 0; trial < 500; ++trial) {
            const double dt = 10.0 * (rng.uniform() - 0.5);
            const double j1 = 0.1 + 10.0 * rng.uniform();
            const double j2 = 0.1 + 10.0 * rng.uniform();
            const double a = transforms::quantum_interval({dt, j1, j2});
            worst = std::max(worst, std::abs(a - transforms::quantum_interval({dt, j2, j1})));
            worst = std::max(worst, std::abs(a - transforms::quantum_interval({-dt, j1, j2})));
        }
        detail = "max asymmetry " + fmt(worst);
        return worst < 1e-12 * ts;
    });

    suite.run("transforms.delta_equals_gamma_under_analogy", [&](std::string& detail) {
        double worst = 0.0;
        for (int i = 0; i <= 990; ++i) {
            const double x = static_cast<double>(i) / 1000.0;
            const double delta = transforms::delta_factor({1.0, 1.0, x, 1.0, 1.0});
            const double gamma = transforms::gamma_factor(x, 1.0);
            worst = std::max(worst, std::abs(delta - gamma));
        }
        detail = "max |delta - gamma| " + fmt(worst);
        return worst < 1e-12 * ts;
    });

    suite.run("transforms.flat_interval_triangle_inequality", [&](std::string& detail) {
        SeededRng rng(23);
        for (int trial = 0; trial < 500; ++trial) {
            transforms::FiveDisplacement a, b;
            double* pa = &a.dA;
            double* pb = &b.dA;
            for (int i = 0; i < 5; ++i) {
                pa[i] = 10.0 * (rng.uniform() - 0.5);
                pb[i] = 10.0 * (rng.uniform() - 0.5);
            }
            transforms::FiveDisplacement sum{a.dA + b.dA, a.dB + b.dB, a.dC + b.dC,
                                             a.dD + b.dD, a.dE + b.dE};
            if (transforms::flat_5_interval(sum) >
                transforms::flat_5_interval(a) + transforms::flat_5_interval(b) + 1e-12 * ts) {
                detail = "violated at trial " + std::to_string(trial);
                return false;
            }
        }
        return true;
    });

    // ---- wavepacket-sim ----
    const wave::Grid1D packet_grid(-256.0, 256.0, 2048);
    const auto base_packet = wave::init_gaussian(packet_grid, 0.0, 8.0, 0.5, 1.0, 1.0);

    suite.run("wave.norm_conservation_1e4_steps", [&](std::string& detail) {
        const auto evolved = wave::evolve_free(base_packet, 0.02, 10000);
        const double drift = std::abs(evolved.norm_sq() - 1.0);
        detail = "drift " + fmt(drift);
        return drift < 1e-10 * ts;
    });

    suite.run("wave.energy_conservation", [&](std::string& detail) {
        const double before = base_packet.mean_k_squared();
        const double after = wave::evolve_free(base_packet, 0.02, 2000).mean_k_squared();
        const double rel = std::abs(after - before) / before;
        detail = "relative <k^2> drift " + fmt(rel);
        return rel < 1e-10 * ts;
    });

    suite.run("wave.time_reversal", [&](std::string& detail) {
        const auto there = wave::evolve_free(base_packet, 0.02, 400);
        const auto back = wave::evolve_free(there, -0.02, 400);
        const double diff = (back.amplitudes - base_packet.amplitudes).cwiseAbs().maxCoeff();
        detail = "max amplitude deviation " + fmt(diff);
        return diff < 1e-10 * ts;
    });

    suite.run("wave.fringe_law_3x3_sweep", [&](std::string& detail) {
        const wave::Grid1D grid(-4096.0, 4096.0, 8192);
        double worst = 0.0;
        // Separation-to-width ratios of 28-36 keep the diffraction envelope
        // much wider than one fringe, so peak positions are not biased.
        for (double d : {112.0, 128.0, 144.0}) {
            for (double v : {0.0625, 0.1, 0.125}) {
                const double lambda = 2.0 * std::numbers::pi / v;
                const wave::SlitConfig config{d, 4.0, 2.2 * d * d / lambda, v};
                const auto result = wave::double_slit(config, 1.0, grid, 1.0);
                const double expected = result.wavelength * config.screen_distance / d;
                worst = std::max(worst, std::abs(result.fringe_spacing - expected) / expected);
            }
        }
        detail = "max relative spacing error " + fmt(worst);
        return worst < 0.02 * ts;
    });

    suite.run("wave.frame_swap_invariance", [&](std::string& detail) {
        const wave::Grid1D grid(-2048.0, 2048.0, 4096);
        const wave::SlitConfig config{112.0, 4.0, 520.0, 0.125};
        const auto report = wave::frame_swapped_run(config, 1.0, 100.0, grid, 1.0);
        const double product_err =
            std::max(std::abs(report.debroglie_forward - 1.0), std::abs(report.debroglie_backward - 1.0));
        const double spacing_err = std::abs(report.swapped.fringe_spacing -
                                            report.expected_swapped_spacing) /
                                   report.expected_swapped_spacing;
        detail = "product error " + fmt(product_err) + ", spacing error " + fmt(spacing_err);
        return product_err < 1e-9 * ts && spacing_err < 0.02 * ts;
    });

    // ---- nested-frames ----
    suite.run("nested.pair_norm_through_evolution", [&](std::string& detail) {
        const auto p1 = wave::init_gaussian(packet_grid, 0.0, 8.0, 0.4, 1.0, 1.0);
        const auto p2 = wave::init_gaussian(packet_grid, 10.0, 6.0, -0.3, 2.0, 1.0);
        nested::FrameChain chain({"Q1", "Q2", "Q3"}, {p1, p2});
        const auto evolved = nested::evolve_chain(chain, 0.02, 1000);
        double drift = 0.0;
        for (const auto& p : evolved.pair_packets)
            drift = std::max(drift, std::abs(p.norm_sq() - 1.0));
        detail = "max per-pair drift " + fmt(drift);
        return drift < 1e-10 * ts;
    });

    suite.run("nested.norm_axiom_two_frames", [&](std::string& detail) {
        nested::FrameChain chain({"Q1", "Q2"},
                                 {wave::init_gaussian(packet_grid, 0.0, 8.0, 1.0, 1.0, 1.0)});
        const double value = nested::nested_norm(chain);
        detail = "nested norm " + fmt(value);
        return std::abs(value - 1.0) < 1e-10 * ts;
    });

    suite.run("nested.convolution_adds_variances", [&](std::string& detail) {
        const auto pa = wave::init_gaussian(packet_grid, 0.0, 8.0, 0.0, 1.0, 1.0);
        const auto pb = wave::init_gaussian(packet_grid, 0.0, 6.0, 0.0, 1.0, 1.0);
        nested::FrameChain chain({"Q1", "Q2", "Q3"}, {pa, pb});
        const auto z = nested::compose_relative_amplitude(chain);
        const double sigma = z.packet.position_spread();
        const double expected = std::sqrt(8.0 * 8.0 + 6.0 * 6.0);
        const double rel = std::abs(sigma - expected) / expected;
        detail = "relative width error " + fmt(rel);
        return rel < 0.005 * ts;
    });

    suite.run("nested.fit_recovers_free_coefficient", [&](std::string& detail) {
        nested::FrameChain chain({"Q1", "Q2"},
                                 {wave::init_gaussian(packet_grid, 0.0, 8.0, 0.5, 1.0, 1.0)});
        std::vector<nested::RelativeAmplitude> history;
        std::vector<double> times;
        for (int snap = 0; snap < 5; ++snap) {
            history.push_back(nested::compose_relative_amplitude(chain));
            times.push_back(0.001 * snap);
            chain = nested::evolve_chain(chain, 0.001, 1);
        }
        const auto fit = nested::fit_diffusion_constant(history, times);
        const std::complex<double> expected(0.0, 0.5);
        const double rel = std::abs(fit.k - expected) / std::abs(expected);
        detail = "relative k error " + fmt(rel);
        return rel < 1e-4 * ts;
    });

    // ---- cli-runner ----
    suite.run("cli.byte_identical_reruns", [&](std::string& detail) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "qrel_verify_determinism";
        fs::create_directories(dir);
        nlohmann::json config;
        config["kind"] = "wigner_chain";
        config["seed"] = 42;
        config["params"] = {{"c1_re", 0.6}, {"c2_re", 0.8}, {"trials", 50}};
        config["output_path"] = "a.json";
        const auto r1 = run_scenario(config, std::nullopt, dir.string());
        config["output_path"] = "b.json";
        const auto r2 = run_scenario(config, std::nullopt, dir.string());
        if (r1.exit_code != 0 || r2.exit_code != 0) {
            detail = "scenario failed";
            return false;
        }
        std::ifstream fa(dir / "a.json", std::ios::binary);
        std::ifstream fb(dir / "b.json", std::ios::binary);
        const std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
        const std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
        fs::remove_all(dir);
        detail = sa == sb ? "outputs identical" : "outputs differ";
        return !sa.empty() && sa == sb;
    });

    return suite.results;
}

} // namespace qrel::cli
