#include "qrel/measurement.hpp"

#include "qrel/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qrel::chain {

namespace {

// Amplitude matrix of a bipartite state, rows indexed by the first subsystem.
Eigen::MatrixXcd amplitude_matrix(const StateVector& psi) {
    if (psi.dims.size() != 2)
        throw std::invalid_argument("expected a bipartite state");
    Eigen::MatrixXcd m(psi.dims[0], psi.dims[1]);
    for (Eigen::Index i = 0; i < psi.dims[0]; ++i)
        for (Eigen::Index j = 0; j < psi.dims[1]; ++j)
            m(i, j) = psi.amplitudes[i * psi.dims[1] + j];
    return m;
}

bool is_superposed(const StateVector& psi) {
    int heavy = 0;
    for (Eigen::Index i = 0; i < psi.dim(); ++i)
        if (std::norm(psi.amplitudes[i]) > 1e-12) ++heavy;
    return heavy >= 2;
}

} // namespace

std::vector<MeasurementRecord> WignerChainResult::records() const {
    MeasurementRecord comparison;
    comparison.observer = "comparison";
    comparison.observed = "SA";
    comparison.time = e_view.time;
    comparison.outcome = descriptions_coincide ? 1 : 0;
    comparison.state = e_view.state;
    return {sa_view, e_view, comparison};
}

StateVector premeasure(const StateVector& s0, Eigen::Index pointer_dim) {
    if (s0.dims.size() != 1 || s0.dims[0] != 2)
        throw std::invalid_argument("premeasure: input must be a single 2-level system");
    if (std::abs(s0.norm_sq() - 1.0) > 1e-10)
        throw std::invalid_argument("premeasure: input must be normalized");
    if (pointer_dim < 3)
        throw std::invalid_argument(
            "premeasure: apparatus needs >= 3 levels (ready state plus one per outcome)");

    // Apparatus levels: 0 = ready, 1 = registered-up, 2 = registered-down.
    Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(2 * pointer_dim);
    joint[0 * pointer_dim + 1] = s0.amplitudes[0];
    joint[1 * pointer_dim + 2] = s0.amplitudes[1];
    return StateVector(std::move(joint), {2, pointer_dim}, {s0.labels[0], "A"});
}

BasisRewrite rewrite_basis_paradox(const StateVector& psi_t) {
    if (psi_t.dims.size() != 2 || psi_t.dims[0] != 2)
        throw std::invalid_argument("rewrite_basis_paradox: expected a spin (x) apparatus state");

    BasisRewrite out;
    out.rewritten = change_basis(psi_t, 0, Operator::hadamard());
    out.original_coeffs.assign(psi_t.amplitudes.data(),
                               psi_t.amplitudes.data() + psi_t.dim());
    out.rewritten_coeffs.assign(out.rewritten.amplitudes.data(),
                                out.rewritten.amplitudes.data() + out.rewritten.dim());
    return out;
}

WignerChainResult wigner_chain(const StateVector& s0, std::uint64_t seed) {
    const StateVector psi_t = premeasure(s0, 3);

    const ProjectChainResult projected = project_chain(psi_t, seed);

    WignerChainResult result;
    result.sa_view = {"SA", "SA", 1.0, projected.branch, projected.final};
    result.e_view = {"E", "SA", 1.0, std::nullopt, psi_t};
    if (!is_superposed(psi_t)) {
        // Definite input: the external description is already resolved too.
        result.e_view.outcome = projected.branch;
    }
    result.descriptions_coincide = overlap_mod(result.sa_view.state, result.e_view.state) > 1.0 - 1e-10;
    return result;
}

ProjectChainResult project_chain(const StateVector& psi_t, std::uint64_t seed) {
    const Eigen::MatrixXcd m = amplitude_matrix(psi_t);

    // Pointer-basis correlation: the apparatus rows attached to distinct
    // outcomes must be orthogonal, otherwise the projection chain does not
    // cover this state.
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.rows(); ++j)
            if (std::abs(m.row(i).dot(m.row(j))) > 1e-9)
                throw std::domain_error(
                    "project_chain: no pointer-basis correlation structure (cross terms above 1e-9)");

    std::vector<double> weights(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        weights[static_cast<std::size_t>(i)] = m.row(i).squaredNorm();

    SeededRng rng(seed);
    const std::size_t branch = rng.sample_discrete(weights);

    Eigen::VectorXcd collapsed = Eigen::VectorXcd::Zero(psi_t.dim());
    const Eigen::Index cols = m.cols();
    for (Eigen::Index j = 0; j < cols; ++j)
        collapsed[static_cast<Eigen::Index>(branch) * cols + j] = m(static_cast<Eigen::Index>(branch), j);
    collapsed /= std::sqrt(weights[branch]);

    return ProjectChainResult{StateVector(std::move(collapsed), psi_t.dims, psi_t.labels),
                              static_cast<int>(branch), weights[branch]};
}

double decoherence_time(const DecoherenceParams& p) {
    if (p.relaxation_time <= 0.0 || p.thermal_length <= 0.0)
        throw std::invalid_argument("decoherence_time: parameters must be positive");
    if (p.separation == 0.0)
        throw std::domain_error("decoherence_time: zero separation");
    const double ratio = p.thermal_length / p.separation;
    return p.relaxation_time * ratio * ratio;
}

DensityMatrix dephase(const DensityMatrix& rho, const Operator& pointer_observable,
                      double strength) {
    if (strength < 0.0 || strength > 1.0)
        throw std::invalid_argument("dephase: strength must lie in [0, 1]");
    if (!pointer_observable.is_hermitian(1e-10))
        throw std::invalid_argument("dephase: pointer observable must be Hermitian");
    if (rho.dim() != pointer_observable.dim())
        throw std::invalid_argument("dephase: dimension mismatch");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pointer_observable.entries);
    const Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::MatrixXcd in_pointer = v.adjoint() * rho.entries * v;
    for (Eigen::Index i = 0; i < in_pointer.rows(); ++i)
        for (Eigen::Index j = 0; j < in_pointer.cols(); ++j)
            if (i != j) in_pointer(i, j) *= (1.0 - strength);
    return DensityMatrix{v * in_pointer * v.adjoint()};
}

} // namespace qrel::chain
