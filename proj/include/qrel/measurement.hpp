#pragma once

#include "qrel/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrel::chain {

/// One observer's description of a system at a moment of its local time.
/// `outcome` is empty while the described state is still a superposition over
/// the pointer basis (an unresolved measurement).
struct MeasurementRecord {
    std::string observer;
    std::string observed;
    double time = 0.0;
    std::optional<int> outcome;
    StateVector state;
};

struct WignerChainResult {
    MeasurementRecord sa_view; // definite outcome after A measures S
    MeasurementRecord e_view;  // the still-entangled external description
    bool descriptions_coincide;

    std::vector<MeasurementRecord> records() const;
};

struct DecoherenceParams {
    double relaxation_time; // s
    double thermal_length;  // m
    double separation;      // m
};

struct BasisRewrite {
    StateVector rewritten; // same state, spin subsystem in the +/- basis
    std::vector<Complex> original_coeffs;
    std::vector<Complex> rewritten_coeffs;
};

struct ProjectChainResult {
    StateVector final;
    int branch;
    double probability;
};

/// Adjoin an apparatus register in its ready state and entangle it with the
/// 2-level system: c1|0> + c2|1> -> c1|0>|A1> + c2|1>|A2>. The apparatus
/// needs at least three levels (ready plus one per outcome).
StateVector premeasure(const StateVector& s0, Eigen::Index pointer_dim);

/// Re-express an entangled premeasured state with the spin subsystem in the
/// (|0>+|1>, |0>-|1>)/sqrt(2) basis and report both coefficient expansions.
BasisRewrite rewrite_basis_paradox(const StateVector& psi_t);

/// The S-A-E story: A's definite self-description, E's entangled external
/// description, and whether the two coincide.
WignerChainResult wigner_chain(const StateVector& s0, std::uint64_t seed);

/// Projection postulate in the correlated pointer basis: collapse the joint
/// state to one correlated branch. Throws if the state has no pointer-basis
/// correlation structure (cross terms above 1e-9).
ProjectChainResult project_chain(const StateVector& psi_t, std::uint64_t seed);

/// tau_D = relaxation_time * (thermal_length / separation)^2.
double decoherence_time(const DecoherenceParams& p);

/// Scale off-diagonal elements in the eigenbasis of `pointer_observable` by
/// (1 - strength). strength 1 fully einselects the pointer basis.
DensityMatrix dephase(const DensityMatrix& rho, const Operator& pointer_observable,
                      double strength);

} // namespace qrel::chain
