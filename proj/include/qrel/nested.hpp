#pragma once

#include "qrel/wavepacket.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qrel::nested {

/// Ordered frames Q1..Qn with one relative wave packet per adjacent pair;
/// packet j describes Q_{j+2} relative to Q_{j+1}. Each pair packet is
/// individually normalized.
struct FrameChain {
    std::vector<std::string> frame_names;   // length n >= 2
    std::vector<wave::WavePacket> pair_packets; // length n - 1

    FrameChain(std::vector<std::string> names, std::vector<wave::WavePacket> packets);

    std::size_t num_frames() const { return frame_names.size(); }
};

/// Composed amplitude between the chain ends (propagator-style convolution
/// of the pairwise amplitudes). Not normalized in general.
struct RelativeAmplitude {
    wave::WavePacket packet;
};

/// The nested normalization expression: each inner packet is integrated
/// plainly over its own coordinate, only the outermost integration squares.
/// Reduces to the plain norm (= 1) for a two-frame chain; generic longer
/// chains give a value away from 1.
double nested_norm(const FrameChain& chain);
/// Same expression on raw pair packets (no per-pair normalization demanded;
/// admits degenerate diagnostic inputs).
double nested_norm(const std::vector<wave::WavePacket>& pair_packets);

/// Evolve every pair packet independently under its own free Schroedinger
/// equation with its own pair mass.
FrameChain evolve_chain(const FrameChain& chain, double dt, Eigen::Index steps);

/// Z = convolution of all pair packets, computed spectrally. Requires
/// commensurate grids. For n = 2 this is the single pair packet.
RelativeAmplitude compose_relative_amplitude(const FrameChain& chain);

/// Grid-max modulus of LHS - RHS of the summed pairwise constraint: for pair
/// j (j = 2..n), (i hbar)^(j-1) times the time derivative against
/// (-hbar^2/2m)^(j-1) times the second space derivative. One pair reduces to
/// the plain Schroedinger residual. Diagnostic value, no threshold.
double constraint_residual(const FrameChain& chain, double dt);
/// Same residual on raw pair packets (admits degenerate diagnostic inputs).
double constraint_residual(const std::vector<wave::WavePacket>& pair_packets, double dt);

struct DiffusionFit {
    std::complex<double> k;
    double residual; // relative L2 misfit
};

/// Least-squares complex k minimizing ||dZ/dt - k d2Z/dx2|| over the
/// snapshot history (centered time differences, spectral space derivative).
/// Needs >= 3 snapshots and a non-static history.
DiffusionFit fit_diffusion_constant(const std::vector<RelativeAmplitude>& history,
                                    const std::vector<double>& times);

} // namespace qrel::nested
