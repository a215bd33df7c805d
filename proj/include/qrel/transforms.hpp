#pragma once

#include "qrel/constants.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qrel::transforms {

struct TransformParams {
    double m_S;                  // kg
    double m_A;                  // kg
    double E_q = 0.0;            // J, relative quantum energy
    double t = 0.0;              // s
    double h = constants::hbar;  // action constant; defaults to hbar
};

struct QuantumInterval {
    double dt; // s
    double J1; // J
    double J2; // J
};

/// The five parameters of a quantum measurement (amplitude pair, phase,
/// location pair), as displacements.
struct FiveDisplacement {
    double dA, dB, dC, dD, dE;
};

/// dx' = dx * sqrt(m_S / m_A), the mass-ratio coordinate dilation
/// (proportionality constant fixed to 1).
inline double dilate_length(double dx, double m_S, double m_A) {
    if (m_S <= 0.0 || m_A <= 0.0)
        throw std::invalid_argument("dilate_length: masses must be positive");
    return dx * std::sqrt(m_S / m_A);
}

/// m * v * lambda, the matter-wave action product.
inline double debroglie_product(double m, double v, double lambda) {
    return m * v * lambda;
}

struct DebroglieSwap {
    double lambda_forward;   // hbar / (m_S v)
    double lambda_backward;  // hbar / (m_A v)
    double magnified_length; // backward wavelength re-expressed in dilated coordinates
};

/// Wavelengths of each system as described by the other, at shared relative
/// speed v. Both directions keep m*v*lambda = hbar; the backward wavelength
/// measured in dilated coordinates is magnified by sqrt(m_A / m_S).
inline DebroglieSwap frame_swap_debroglie(double m_S, double m_A, double v,
                                          double hbar = constants::hbar) {
    if (m_S <= 0.0 || m_A <= 0.0 || v <= 0.0)
        throw std::invalid_argument("frame_swap_debroglie: inputs must be positive");
    DebroglieSwap out;
    out.lambda_forward = hbar / (m_S * v);
    out.lambda_backward = hbar / (m_A * v);
    out.magnified_length = out.lambda_backward / dilate_length(1.0, m_S, m_A);
    return out;
}

/// nu = sqrt(dt^2 + (J1 - J2)^2); with lambda_i = 1/J_i the second term is
/// (dlambda / (lambda_1 lambda_2))^2. Always non-negative.
inline double quantum_interval(const QuantumInterval& q) {
    if (q.J1 <= 0.0 || q.J2 <= 0.0)
        throw std::invalid_argument("quantum_interval: energies must be positive");
    return std::hypot(q.dt, q.J1 - q.J2);
}

/// Lorentz factor 1/sqrt(1 - v^2/c^2); throws on |v| >= c.
inline double gamma_factor(double v, double c = constants::speed_of_light) {
    if (c <= 0.0) throw std::invalid_argument("gamma_factor: c must be positive");
    const double beta = v / c;
    if (std::abs(beta) >= 1.0)
        throw std::domain_error("gamma_factor: |v| >= c singularity");
    return 1.0 / std::sqrt(1.0 - beta * beta);
}

/// delta = 1/sqrt(1 - (E_q t / h)^2), the quantum analogue of gamma;
/// throws on |E_q t / h| >= 1.
inline double delta_factor(const TransformParams& p) {
    if (p.h <= 0.0) throw std::invalid_argument("delta_factor: h must be positive");
    const double x = p.E_q * p.t / p.h;
    if (std::abs(x) >= 1.0)
        throw std::domain_error("delta_factor: |E_q t / h| >= 1 singularity");
    return 1.0 / std::sqrt(1.0 - x * x);
}

/// Euclidean length of a five-displacement (all-plus signature).
inline double flat_5_interval(const FiveDisplacement& d) {
    return std::sqrt(d.dA * d.dA + d.dB * d.dB + d.dC * d.dC + d.dD * d.dD + d.dE * d.dE);
}

/// Unit system in which hbar = 1: pick a mass and a length scale, the time
/// scale follows as m L^2 / hbar. Dividing SI quantities by these scales
/// re-expresses them in natural units.
struct NaturalUnits {
    double mass_scale;   // kg per natural mass unit
    double length_scale; // m per natural length unit

    double time_scale() const {
        return mass_scale * length_scale * length_scale / constants::hbar;
    }
    double energy_scale() const {
        return constants::hbar / time_scale();
    }
};

} // namespace qrel::transforms
