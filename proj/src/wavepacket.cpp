#include "qrel/wavepacket.hpp"

#include "qrel/fft.hpp"
#include "qrel/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace qrel::wave {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

Eigen::Index next_pow2(double x) {
    Eigen::Index n = 1;
    while (static_cast<double>(n) < x) n <<= 1;
    return n;
}

Eigen::VectorXcd spectrum(const WavePacket& p) {
    Eigen::VectorXcd f = p.amplitudes;
    fft_inplace(f, false);
    return f;
}

} // namespace

Grid1D::Grid1D(double x_min_, double x_max_, Eigen::Index n_points_)
    : x_min(x_min_), x_max(x_max_), n_points(n_points_) {
    if (x_max <= x_min) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
    if (!is_pow2(n_points)) throw std::invalid_argument("Grid1D: n_points must be a power of two");
}

double Grid1D::k(Eigen::Index j) const {
    const Eigen::Index half = n_points / 2;
    const Eigen::Index wrapped = (j < half) ? j : j - n_points;
    return 2.0 * kPi * static_cast<double>(wrapped) / (x_max - x_min);
}

double WavePacket::mean_position() const {
    double m = 0.0;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
        m += grid.x(i) * std::norm(amplitudes[i]);
    return m * grid.dx() / norm_sq();
}

double WavePacket::position_spread() const {
    const double mu = mean_position();
    double v = 0.0;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        const double d = grid.x(i) - mu;
        v += d * d * std::norm(amplitudes[i]);
    }
    return std::sqrt(v * grid.dx() / norm_sq());
}

double WavePacket::mean_momentum() const {
    const Eigen::VectorXcd f = spectrum(*this);
    double num = 0.0, den = 0.0;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        const double w = std::norm(f[j]);
        num += grid.k(j) * w;
        den += w;
    }
    return hbar * num / den;
}

double WavePacket::mean_k_squared() const {
    const Eigen::VectorXcd f = spectrum(*this);
    double num = 0.0, den = 0.0;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        const double w = std::norm(f[j]);
        num += grid.k(j) * grid.k(j) * w;
        den += w;
    }
    return num / den;
}

void SlitConfig::validate() const {
    if (!(slit_separation > slit_width && slit_width > 0.0))
        throw std::invalid_argument("SlitConfig: requires d > w > 0");
    if (screen_distance <= 0.0) throw std::invalid_argument("SlitConfig: L must be positive");
    if (packet_speed <= 0.0) throw std::invalid_argument("SlitConfig: v must be positive");
}

WavePacket init_gaussian(const Grid1D& grid, double x0, double sigma0, double k0,
                         double mass, double hbar) {
    if (mass <= 0.0 || hbar <= 0.0)
        throw std::invalid_argument("init_gaussian: mass and hbar must be positive");
    if (sigma0 < 4.0 * grid.dx())
        throw std::domain_error("init_gaussian: sigma0 under-resolved (needs >= 4 dx)");
    if (x0 - 6.0 * sigma0 < grid.x_min || x0 + 6.0 * sigma0 > grid.x_max)
        throw std::domain_error("init_gaussian: packet support closer than 6 sigma to boundary");

    WavePacket p{grid, Eigen::VectorXcd(grid.n_points), mass, hbar};
    for (Eigen::Index i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        const double arg = (x - x0) / sigma0;
        p.amplitudes[i] =
            std::exp(-0.25 * arg * arg) * std::polar(1.0, k0 * x);
    }
    p.amplitudes /= std::sqrt(p.norm_sq());

    double edge_mass = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i)
        edge_mass += (std::norm(p.amplitudes[i]) +
                      std::norm(p.amplitudes[grid.n_points - 1 - i])) * grid.dx();
    if (edge_mass > 1e-10)
        throw std::domain_error("init_gaussian: boundary clipping above 1e-10 probability mass");
    return p;
}

WavePacket evolve_free(const WavePacket& p, double dt, Eigen::Index steps) {
    if (steps < 0) throw std::invalid_argument("evolve_free: negative step count");
    if (steps == 0) return p;

    const double k_max = kPi / p.grid.dx();
    const double max_phase = p.hbar * k_max * k_max * std::abs(dt) / (2.0 * p.mass);
    if (max_phase >= kPi)
        throw std::domain_error("evolve_free: per-step phase advance reaches pi (aliasing)");

    const double t_total = dt * static_cast<double>(steps);
    WavePacket out = p;
    fft_inplace(out.amplitudes, false);
    for (Eigen::Index j = 0; j < out.amplitudes.size(); ++j) {
        const double k = p.grid.k(j);
        out.amplitudes[j] *= std::polar(1.0, -p.hbar * k * k * t_total / (2.0 * p.mass));
    }
    fft_inplace(out.amplitudes, true);
    return out;
}

double fringe_spacing(const std::vector<double>& positions,
                      const std::vector<double>& intensity) {
    if (positions.size() != intensity.size() || intensity.size() < 3)
        throw std::invalid_argument("fringe_spacing: malformed profile");
    const double peak = *std::max_element(intensity.begin(), intensity.end());
    // Only count well-formed fringes near the envelope center; faint outer
    // fringes are vulnerable to ripple from the periodic boundary images.
    const double floor = 0.10 * peak;

    std::vector<double> peak_positions;
    for (std::size_t i = 1; i + 1 < intensity.size(); ++i) {
        if (intensity[i] > floor && intensity[i] > intensity[i - 1] &&
            intensity[i] >= intensity[i + 1]) {
            // Parabolic refinement of the maximum.
            const double denom = intensity[i - 1] - 2.0 * intensity[i] + intensity[i + 1];
            double shift = 0.0;
            if (denom < 0.0)
                shift = 0.5 * (intensity[i - 1] - intensity[i + 1]) / denom;
            peak_positions.push_back(positions[i] + shift * (positions[1] - positions[0]));
        }
    }
    if (peak_positions.size() < 2)
        throw std::domain_error("fringe_spacing: fewer than two fringe peaks detected");

    std::vector<double> spacings;
    for (std::size_t i = 1; i < peak_positions.size(); ++i)
        spacings.push_back(peak_positions[i] - peak_positions[i - 1]);
    std::nth_element(spacings.begin(), spacings.begin() + spacings.size() / 2, spacings.end());
    return spacings[spacings.size() / 2];
}

DoubleSlitResult double_slit(const SlitConfig& config, double mass, const Grid1D& grid,
                             double hbar) {
    config.validate();
    if (mass <= 0.0) throw std::invalid_argument("double_slit: mass must be positive");

    const double lambda_bar = hbar / (mass * config.packet_speed);      // hbar-form
    const double lambda = 2.0 * kPi * lambda_bar;                       // h-form, sets the fringe law
    if (lambda_bar < 8.0 * grid.dx())
        throw std::domain_error("double_slit: de Broglie wavelength under-resolved on grid");
    if (config.screen_distance < 2.0 * config.slit_separation * config.slit_separation / lambda)
        throw std::domain_error("double_slit: far-field condition L >> d^2/lambda violated");
    if (config.slit_width < 4.0 * grid.dx())
        throw std::domain_error("double_slit: slit width under-resolved (needs >= 4 dx)");

    // Aperture mask as the initial condition: two Gaussian-smoothed slits.
    WavePacket p{grid, Eigen::VectorXcd(grid.n_points), mass, hbar};
    const double half_d = 0.5 * config.slit_separation;
    for (Eigen::Index i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        const double a1 = (x - half_d) / config.slit_width;
        const double a2 = (x + half_d) / config.slit_width;
        p.amplitudes[i] = std::exp(-0.25 * a1 * a1) + std::exp(-0.25 * a2 * a2);
    }
    p.amplitudes /= std::sqrt(p.norm_sq());

    const double flight_time = config.screen_distance / config.packet_speed;
    const double k_max = kPi / grid.dx();
    const double dt_max = 0.5 * 2.0 * kPi * mass / (hbar * k_max * k_max);
    const auto steps = static_cast<Eigen::Index>(std::ceil(flight_time / dt_max));
    p = evolve_free(p, flight_time / static_cast<double>(steps), steps);

    DoubleSlitResult result;
    result.positions.resize(static_cast<std::size_t>(grid.n_points));
    result.intensity.resize(static_cast<std::size_t>(grid.n_points));
    for (Eigen::Index i = 0; i < grid.n_points; ++i) {
        result.positions[static_cast<std::size_t>(i)] = grid.x(i);
        result.intensity[static_cast<std::size_t>(i)] = std::norm(p.amplitudes[i]);
    }
    result.wavelength = lambda;
    result.time_of_flight = flight_time;
    result.fringe_spacing = fringe_spacing(result.positions, result.intensity);
    return result;
}

FrameSwapReport frame_swapped_run(const SlitConfig& config, double m_S, double m_A,
                                  const Grid1D& grid, double hbar) {
    if (m_S <= 0.0 || m_A <= 0.0)
        throw std::invalid_argument("frame_swapped_run: masses must be positive");

    FrameSwapReport report;
    report.hbar = hbar;
    report.lab = double_slit(config, m_S, grid, hbar);
    report.dilation_factor = transforms::dilate_length(1.0, m_S, m_A);
    report.expected_swapped_spacing = report.lab.fringe_spacing * report.dilation_factor;

    const auto swap = transforms::frame_swap_debroglie(m_S, m_A, config.packet_speed, hbar);
    report.debroglie_forward = transforms::debroglie_product(m_S, config.packet_speed,
                                                            swap.lambda_forward);
    report.debroglie_backward = transforms::debroglie_product(m_A, config.packet_speed,
                                                              swap.lambda_backward);

    // Transverse lengths dilate; the flight time (screen distance over shared
    // speed) is the lab's. The grid is refined so the shorter backward
    // wavelength stays resolved.
    const double s = report.dilation_factor;
    SlitConfig swapped_config = config;
    swapped_config.slit_separation *= s;
    swapped_config.slit_width *= s;

    Eigen::Index n = grid.n_points;
    if (s < 1.0) n = std::max(n, next_pow2(static_cast<double>(grid.n_points) / s));
    const Grid1D swapped_grid(grid.x_min * s, grid.x_max * s, n);

    report.swapped = double_slit(swapped_config, m_A, swapped_grid, hbar);
    return report;
}

std::string intensity_csv(const DoubleSlitResult& result) {
    std::string out = "x_meters,intensity\n";
    char buf[80];
    for (std::size_t i = 0; i < result.positions.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", result.positions[i],
                      result.intensity[i]);
        out += buf;
    }
    return out;
}

void write_intensity_csv(const std::string& path, const DoubleSlitResult& result) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << intensity_csv(result);
}

} // namespace qrel::wave
