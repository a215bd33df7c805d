#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qrel {

using Complex = std::complex<double>;

inline constexpr double kNormTol = 1e-12;

/// Normalized state over a labeled tensor-product basis. `dims` records the
/// subsystem dimensions (their product is the amplitude count) and `labels`
/// names each subsystem.
struct StateVector {
    Eigen::VectorXcd amplitudes;
    std::vector<Eigen::Index> dims;
    std::vector<std::string> labels;

    StateVector() = default;
    StateVector(Eigen::VectorXcd amps, std::vector<Eigen::Index> d,
                std::vector<std::string> lbls = {});

    Eigen::Index dim() const { return amplitudes.size(); }
    std::size_t num_subsystems() const { return dims.size(); }
    double norm_sq() const { return amplitudes.squaredNorm(); }

    /// Normalized 2-level superposition c1|0> + c2|1> (the generic spin input).
    static StateVector superposition2(Complex c1, Complex c2, std::string label = "S");
    /// Basis state |index> of the given dimension.
    static StateVector basis(Eigen::Index dim, Eigen::Index index, std::string label = "S");
};

struct Operator {
    Eigen::MatrixXcd entries;

    Operator() = default;
    explicit Operator(Eigen::MatrixXcd m);

    Eigen::Index dim() const { return entries.rows(); }
    bool is_unitary(double tol = kNormTol) const;
    bool is_hermitian(double tol = kNormTol) const;

    static Operator identity(Eigen::Index n);
    /// The (|0>+|1>, |0>-|1>)/sqrt(2) basis change on a 2-level system.
    static Operator hadamard();
    /// diag(+1, -1) spin observable on a 2-level system.
    static Operator spin_z();
    /// Haar-ish random unitary from QR orthonormalization of a Gaussian matrix.
    static Operator random_unitary(Eigen::Index n, std::uint64_t seed);
};

struct DensityMatrix {
    Eigen::MatrixXcd entries;

    Eigen::Index dim() const { return entries.rows(); }
    double trace_real() const { return entries.trace().real(); }
    double purity() const { return (entries * entries).trace().real(); }
};

StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Apply a unitary on the full joint space.
StateVector apply_unitary(const Operator& u, const StateVector& psi);

/// Apply an operator on one subsystem (identity elsewhere).
StateVector apply_on_subsystem(const Operator& op, const StateVector& psi,
                               std::size_t subsystem);

/// Re-express `psi` in the basis whose vectors are the columns of the unitary
/// B on the named subsystem: coefficients transform by B^dagger.
StateVector change_basis(const StateVector& psi, std::size_t subsystem,
                         const Operator& basis);

struct MeasureResult {
    double outcome;        // sampled eigenvalue
    StateVector collapsed; // renormalized projection (Lueders rule)
    double probability;    // Born weight of the sampled outcome
    std::size_t eigenspace_index;
};

/// Projective measurement of a Hermitian observable on one subsystem, sampled
/// with Born probabilities from the seeded generator. Degenerate eigenvalues
/// project onto the full eigenspace.
MeasureResult measure(const StateVector& psi, std::size_t subsystem,
                      const Operator& observable, std::uint64_t seed);

/// Collapse onto a specific eigenspace; throws if its Born weight is below
/// 1e-14 (degenerate request).
MeasureResult collapse_onto(const StateVector& psi, std::size_t subsystem,
                            const Operator& observable, std::size_t eigenspace_index);

/// Partial trace keeping the listed subsystems (in their original order).
DensityMatrix reduced_state(const StateVector& psi,
                            const std::vector<std::size_t>& keep);

/// |<a|b>|, the global-phase-insensitive overlap.
double overlap_mod(const StateVector& a, const StateVector& b);

/// Measurement distribution of an observable on one subsystem: Born weight
/// per eigenspace, eigenvalues sorted ascending.
std::vector<double> born_distribution(const StateVector& psi, std::size_t subsystem,
                                      const Operator& observable);

} // namespace qrel
