#pragma once

#include "qrel/constants.hpp"

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace qrel::wave {

/// Uniform periodic 1-D grid; n_points must be a power of two.
struct Grid1D {
    double x_min;
    double x_max;
    Eigen::Index n_points;

    Grid1D(double x_min, double x_max, Eigen::Index n_points);

    double dx() const { return (x_max - x_min) / static_cast<double>(n_points); }
    double x(Eigen::Index i) const { return x_min + static_cast<double>(i) * dx(); }
    /// Angular wavenumber of FFT mode j (standard wrap-around ordering).
    double k(Eigen::Index j) const;

    bool operator==(const Grid1D&) const = default;
};

struct WavePacket {
    Grid1D grid;
    Eigen::VectorXcd amplitudes;
    double mass;                    // kg (or natural units)
    double hbar = constants::hbar;  // J s (1.0 in natural units)

    double norm_sq() const { return amplitudes.squaredNorm() * grid.dx(); }
    double mean_position() const;
    double position_spread() const; // std of |psi|^2
    double mean_momentum() const;   // hbar * <k>, spectral estimate
    double mean_k_squared() const;  // <k^2>, spectral estimate
};

struct SlitConfig {
    double slit_separation; // d, m
    double slit_width;      // w, m (Gaussian width of each aperture)
    double screen_distance; // L, m
    double packet_speed;    // v, m/s

    void validate() const;
};

/// Normalized Gaussian, central momentum hbar*k0, |psi|^2 std sigma0.
/// Rejects under-resolved widths (sigma0 < 4 dx) and packets whose tails
/// reach the periodic boundary.
WavePacket init_gaussian(const Grid1D& grid, double x0, double sigma0, double k0,
                         double mass, double hbar = constants::hbar);

/// Free-particle spectral propagation over `steps` intervals of dt. Exact for
/// the free Hamiltonian up to floating point. The per-step, per-mode phase
/// advance must stay below pi.
WavePacket evolve_free(const WavePacket& p, double dt, Eigen::Index steps);

struct DoubleSlitResult {
    std::vector<double> positions;
    std::vector<double> intensity;
    double fringe_spacing;   // measured peak-to-peak
    double wavelength;       // h / (m v), the spacing-law wavelength
    double time_of_flight;   // L / v
};

/// Two Gaussian apertures propagated freely for T = L/v; returns the screen
/// intensity and the measured fringe spacing (expected lambda * L / d).
DoubleSlitResult double_slit(const SlitConfig& config, double mass, const Grid1D& grid,
                             double hbar = constants::hbar);

struct FrameSwapReport {
    DoubleSlitResult lab;
    DoubleSlitResult swapped;
    double dilation_factor;            // sqrt(m_S / m_A)
    double expected_swapped_spacing;   // lab spacing * dilation factor
    double debroglie_forward;          // m_S * v * lambda_forward
    double debroglie_backward;         // m_A * v * lambda_backward
    double hbar;
};

/// Lab-frame double slit plus the electron-frame description: transverse
/// lengths dilated by sqrt(m_S/m_A), mass replaced by m_A, same flight time.
/// The swapped grid is refined as needed to keep the shorter wavelength
/// resolved. Both de Broglie products equal hbar; the swapped fringe spacing
/// is the lab spacing times the dilation factor.
FrameSwapReport frame_swapped_run(const SlitConfig& config, double m_S, double m_A,
                                  const Grid1D& grid, double hbar = constants::hbar);

/// Measure fringe spacing from an intensity profile: parabolic-refined local
/// maxima above 2% of peak, median adjacent spacing.
double fringe_spacing(const std::vector<double>& positions,
                      const std::vector<double>& intensity);

/// CSV with header "x_meters,intensity", full double precision, LF endings.
void write_intensity_csv(const std::string& path, const DoubleSlitResult& result);
std::string intensity_csv(const DoubleSlitResult& result);

} // namespace qrel::wave
