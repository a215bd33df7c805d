#include "qrel/nested.hpp"

#include "qrel/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace qrel::nested {

namespace {

using wave::WavePacket;

void require_commensurate(const std::vector<WavePacket>& packets) {
    for (std::size_t i = 1; i < packets.size(); ++i) {
        if (!(packets[i].grid == packets[0].grid))
            throw std::invalid_argument("pair packets must share one grid");
        if (packets[i].hbar != packets[0].hbar)
            throw std::invalid_argument("pair packets must share one hbar");
    }
}

// Sampled continuous Fourier transform: F_j = sum_m psi(x_m) exp(-i k_j x_m) dx.
Eigen::VectorXcd continuous_fourier(const WavePacket& p) {
    Eigen::VectorXcd f = p.amplitudes;
    fft_inplace(f, false);
    const double dx = p.grid.dx();
    for (Eigen::Index j = 0; j < f.size(); ++j)
        f[j] *= dx * std::polar(1.0, -p.grid.k(j) * p.grid.x_min);
    return f;
}

Eigen::VectorXcd continuous_inverse(Eigen::VectorXcd f, const wave::Grid1D& grid) {
    const double dx = grid.dx();
    for (Eigen::Index j = 0; j < f.size(); ++j)
        f[j] *= std::polar(1.0, grid.k(j) * grid.x_min) / dx;
    fft_inplace(f, true);
    return f;
}

Eigen::VectorXcd second_space_derivative(const WavePacket& p) {
    Eigen::VectorXcd f = p.amplitudes;
    fft_inplace(f, false);
    for (Eigen::Index j = 0; j < f.size(); ++j)
        f[j] *= -p.grid.k(j) * p.grid.k(j);
    fft_inplace(f, true);
    return f;
}

} // namespace

FrameChain::FrameChain(std::vector<std::string> names, std::vector<wave::WavePacket> packets)
    : frame_names(std::move(names)), pair_packets(std::move(packets)) {
    if (frame_names.size() < 2)
        throw std::invalid_argument("FrameChain: needs at least two frames");
    if (pair_packets.size() != frame_names.size() - 1)
        throw std::invalid_argument("FrameChain: needs one pair packet per adjacent frame pair");
    for (const auto& p : pair_packets)
        if (std::abs(p.norm_sq() - 1.0) > 1e-8)
            throw std::invalid_argument("FrameChain: every pair packet must be normalized");
}

double nested_norm(const FrameChain& chain) { return nested_norm(chain.pair_packets); }

double nested_norm(const std::vector<wave::WavePacket>& pair_packets) {
    if (pair_packets.empty()) throw std::invalid_argument("nested_norm: empty chain");
    // Inner packets integrate plainly over their own coordinate.
    std::complex<double> inner(1.0, 0.0);
    for (std::size_t i = 1; i < pair_packets.size(); ++i)
        inner *= pair_packets[i].amplitudes.sum() * pair_packets[i].grid.dx();
    return std::norm(inner) * pair_packets[0].norm_sq();
}

FrameChain evolve_chain(const FrameChain& chain, double dt, Eigen::Index steps) {
    FrameChain out = chain;
    for (auto& p : out.pair_packets) p = wave::evolve_free(p, dt, steps);
    return out;
}

RelativeAmplitude compose_relative_amplitude(const FrameChain& chain) {
    const auto& packets = chain.pair_packets;
    require_commensurate(packets);

    Eigen::VectorXcd z = continuous_fourier(packets[0]);
    double inv_mass_sum = 1.0 / packets[0].mass;
    for (std::size_t i = 1; i < packets.size(); ++i) {
        z.array() *= continuous_fourier(packets[i]).array();
        inv_mass_sum += 1.0 / packets[i].mass;
    }

    WavePacket composed{packets[0].grid, continuous_inverse(std::move(z), packets[0].grid),
                        1.0 / inv_mass_sum, packets[0].hbar};
    return RelativeAmplitude{std::move(composed)};
}

double constraint_residual(const FrameChain& chain, double dt) {
    return constraint_residual(chain.pair_packets, dt);
}

double constraint_residual(const std::vector<wave::WavePacket>& pair_packets, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("constraint_residual: dt must be positive");
    if (pair_packets.empty()) throw std::invalid_argument("constraint_residual: empty chain");
    require_commensurate(pair_packets);

    const Eigen::Index n = pair_packets[0].grid.n_points;
    Eigen::VectorXcd lhs = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);

    for (std::size_t i = 0; i < pair_packets.size(); ++i) {
        const auto& p = pair_packets[i];
        const auto order = static_cast<int>(i) + 1;

        const Eigen::VectorXcd forward = wave::evolve_free(p, dt, 1).amplitudes;
        const Eigen::VectorXcd backward = wave::evolve_free(p, -dt, 1).amplitudes;
        const Eigen::VectorXcd dpsi_dt = (forward - backward) / (2.0 * dt);
        const Eigen::VectorXcd d2psi = second_space_derivative(p);

        const std::complex<double> lhs_coeff =
            std::pow(std::complex<double>(0.0, p.hbar), order);
        const std::complex<double> rhs_coeff =
            std::pow(std::complex<double>(-p.hbar * p.hbar / (2.0 * p.mass), 0.0), order);
        lhs += lhs_coeff * dpsi_dt;
        rhs += rhs_coeff * d2psi;
    }

    return (lhs - rhs).cwiseAbs().maxCoeff();
}

DiffusionFit fit_diffusion_constant(const std::vector<RelativeAmplitude>& history,
                                    const std::vector<double>& times) {
    if (history.size() < 3)
        throw std::invalid_argument("fit_diffusion_constant: needs >= 3 snapshots");
    if (history.size() != times.size())
        throw std::invalid_argument("fit_diffusion_constant: one time per snapshot");
    for (std::size_t i = 1; i < history.size(); ++i)
        if (!(history[i].packet.grid == history[0].packet.grid))
            throw std::invalid_argument("fit_diffusion_constant: snapshots must share one grid");

    std::complex<double> cross(0.0, 0.0);
    double d2_sq = 0.0, dt_sq = 0.0, z_scale = 0.0;
    std::vector<Eigen::VectorXcd> dzdt_list, d2z_list;
    for (std::size_t i = 1; i + 1 < history.size(); ++i) {
        const double span = times[i + 1] - times[i - 1];
        if (span == 0.0) throw std::invalid_argument("fit_diffusion_constant: repeated times");
        const Eigen::VectorXcd dzdt =
            (history[i + 1].packet.amplitudes - history[i - 1].packet.amplitudes) / span;
        const Eigen::VectorXcd d2z = second_space_derivative(history[i].packet);
        cross += d2z.dot(dzdt); // conjugates d2z
        d2_sq += d2z.squaredNorm();
        dt_sq += dzdt.squaredNorm();
        z_scale += history[i].packet.amplitudes.squaredNorm();
        dzdt_list.push_back(dzdt);
        d2z_list.push_back(d2z);
    }

    if (dt_sq < 1e-20 * z_scale)
        throw std::domain_error("fit_diffusion_constant: static history (zero time derivative)");
    if (d2_sq == 0.0)
        throw std::domain_error("fit_diffusion_constant: flat snapshots");

    const std::complex<double> k = cross / d2_sq;
    double misfit = 0.0;
    for (std::size_t i = 0; i < dzdt_list.size(); ++i)
        misfit += (dzdt_list[i] - k * d2z_list[i]).squaredNorm();
    return DiffusionFit{k, std::sqrt(misfit / dt_sq)};
}

} // namespace qrel::nested
