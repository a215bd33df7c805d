#include "qrel/state.hpp"

#include "qrel/rng.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qrel {

namespace {

Eigen::Index product(const std::vector<Eigen::Index>& dims) {
    Eigen::Index p = 1;
    for (Eigen::Index d : dims) {
        if (d <= 0) throw std::invalid_argument("StateVector: subsystem dimensions must be positive");
        p *= d;
    }
    return p;
}

void check_finite(const Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            throw std::invalid_argument("amplitudes must be finite");
    }
}

struct SubsystemStrides {
    Eigen::Index left, dim, right;
};

SubsystemStrides strides_for(const std::vector<Eigen::Index>& dims, std::size_t k) {
    if (k >= dims.size()) throw std::invalid_argument("subsystem index out of range");
    SubsystemStrides s{1, dims[k], 1};
    for (std::size_t i = 0; i < k; ++i) s.left *= dims[i];
    for (std::size_t i = k + 1; i < dims.size(); ++i) s.right *= dims[i];
    return s;
}

/// Eigen-decomposition of a Hermitian observable with eigenvalues grouped
/// into (near-)degenerate eigenspaces.
struct Eigenspaces {
    std::vector<double> values;                 // one per eigenspace, ascending
    std::vector<Eigen::MatrixXcd> projectors;   // per-eigenspace projector on the subsystem
};

Eigenspaces eigenspaces_of(const Operator& obs) {
    if (!obs.is_hermitian(1e-10)) throw std::invalid_argument("observable must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(obs.entries);
    const auto& evals = es.eigenvalues();
    const auto& evecs = es.eigenvectors();
    const double scale = std::max(1.0, std::abs(evals[evals.size() - 1] - evals[0]));

    Eigenspaces out;
    Eigen::Index i = 0;
    while (i < evals.size()) {
        Eigen::Index j = i;
        while (j + 1 < evals.size() && std::abs(evals[j + 1] - evals[i]) < 1e-10 * scale) ++j;
        Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(obs.dim(), obs.dim());
        double mean = 0.0;
        for (Eigen::Index c = i; c <= j; ++c) {
            p += evecs.col(c) * evecs.col(c).adjoint();
            mean += evals[c];
        }
        out.values.push_back(mean / static_cast<double>(j - i + 1));
        out.projectors.push_back(std::move(p));
        i = j + 1;
    }
    return out;
}

} // namespace

StateVector::StateVector(Eigen::VectorXcd amps, std::vector<Eigen::Index> d,
                         std::vector<std::string> lbls)
    : amplitudes(std::move(amps)), dims(std::move(d)), labels(std::move(lbls)) {
    if (amplitudes.size() != product(dims))
        throw std::invalid_argument("StateVector: amplitude count must equal product of dims");
    check_finite(amplitudes);
    if (labels.empty()) {
        labels.reserve(dims.size());
        for (std::size_t i = 0; i < dims.size(); ++i) labels.push_back("q" + std::to_string(i));
    }
    if (labels.size() != dims.size())
        throw std::invalid_argument("StateVector: one label per subsystem required");
}

StateVector StateVector::superposition2(Complex c1, Complex c2, std::string label) {
    Eigen::VectorXcd v(2);
    v << c1, c2;
    const double n = v.norm();
    if (n < 1e-300) throw std::invalid_argument("superposition2: zero state");
    v /= n;
    return StateVector(v, {2}, {std::move(label)});
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index, std::string label) {
    if (index < 0 || index >= dim) throw std::invalid_argument("basis: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[index] = 1.0;
    return StateVector(v, {dim}, {std::move(label)});
}

Operator::Operator(Eigen::MatrixXcd m) : entries(std::move(m)) {
    if (entries.rows() != entries.cols())
        throw std::invalid_argument("Operator: matrix must be square");
}

bool Operator::is_unitary(double tol) const {
    Eigen::MatrixXcd delta = entries.adjoint() * entries - Eigen::MatrixXcd::Identity(dim(), dim());
    return delta.cwiseAbs().maxCoeff() < tol;
}

bool Operator::is_hermitian(double tol) const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() < tol;
}

Operator Operator::identity(Eigen::Index n) {
    return Operator(Eigen::MatrixXcd::Identity(n, n));
}

Operator Operator::hadamard() {
    Eigen::MatrixXcd h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return Operator(h);
}

Operator Operator::spin_z() {
    Eigen::MatrixXcd z(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    return Operator(z);
}

Operator Operator::random_unitary(Eigen::Index n, std::uint64_t seed) {
    SeededRng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            g(r, c) = Complex(normal(rng.engine()), normal(rng.engine()));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    return Operator(q);
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    Eigen::VectorXcd out(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        for (Eigen::Index j = 0; j < b.dim(); ++j)
            out[i * b.dim() + j] = a.amplitudes[i] * b.amplitudes[j];

    std::vector<Eigen::Index> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    std::vector<std::string> labels = a.labels;
    labels.insert(labels.end(), b.labels.begin(), b.labels.end());
    return StateVector(std::move(out), std::move(dims), std::move(labels));
}

StateVector apply_unitary(const Operator& u, const StateVector& psi) {
    if (u.dim() != psi.dim()) throw std::invalid_argument("apply_unitary: dimension mismatch");
    StateVector out = psi;
    out.amplitudes = u.entries * psi.amplitudes;
    return out;
}

StateVector apply_on_subsystem(const Operator& op, const StateVector& psi,
                               std::size_t subsystem) {
    const auto s = strides_for(psi.dims, subsystem);
    if (op.dim() != s.dim) throw std::invalid_argument("apply_on_subsystem: dimension mismatch");

    StateVector out = psi;
    Eigen::VectorXcd tmp(s.dim);
    for (Eigen::Index l = 0; l < s.left; ++l) {
        for (Eigen::Index r = 0; r < s.right; ++r) {
            for (Eigen::Index i = 0; i < s.dim; ++i)
                tmp[i] = psi.amplitudes[(l * s.dim + i) * s.right + r];
            Eigen::VectorXcd res = op.entries * tmp;
            for (Eigen::Index i = 0; i < s.dim; ++i)
                out.amplitudes[(l * s.dim + i) * s.right + r] = res[i];
        }
    }
    return out;
}

StateVector change_basis(const StateVector& psi, std::size_t subsystem,
                         const Operator& basis) {
    if (!basis.is_unitary(1e-10))
        throw std::invalid_argument("change_basis: basis operator must be unitary");
    return apply_on_subsystem(Operator(basis.entries.adjoint()), psi, subsystem);
}

std::vector<double> born_distribution(const StateVector& psi, std::size_t subsystem,
                                      const Operator& observable) {
    const auto spaces = eigenspaces_of(observable);
    std::vector<double> probs;
    probs.reserve(spaces.values.size());
    for (const auto& p : spaces.projectors) {
        StateVector projected = apply_on_subsystem(Operator(p), psi, subsystem);
        probs.push_back(projected.norm_sq());
    }
    return probs;
}

namespace {

MeasureResult collapse_impl(const StateVector& psi, std::size_t subsystem,
                            const Eigenspaces& spaces, std::size_t idx, double prob) {
    StateVector projected = apply_on_subsystem(Operator(spaces.projectors[idx]), psi, subsystem);
    projected.amplitudes /= std::sqrt(projected.norm_sq());
    return MeasureResult{spaces.values[idx], std::move(projected), prob, idx};
}

} // namespace

MeasureResult measure(const StateVector& psi, std::size_t subsystem,
                      const Operator& observable, std::uint64_t seed) {
    const auto spaces = eigenspaces_of(observable);
    std::vector<double> probs;
    probs.reserve(spaces.values.size());
    for (const auto& p : spaces.projectors) {
        StateVector projected = apply_on_subsystem(Operator(p), psi, subsystem);
        probs.push_back(projected.norm_sq());
    }
    SeededRng rng(seed);
    const std::size_t idx = rng.sample_discrete(probs);
    return collapse_impl(psi, subsystem, spaces, idx, probs[idx]);
}

MeasureResult collapse_onto(const StateVector& psi, std::size_t subsystem,
                            const Operator& observable, std::size_t eigenspace_index) {
    const auto spaces = eigenspaces_of(observable);
    if (eigenspace_index >= spaces.values.size())
        throw std::invalid_argument("collapse_onto: eigenspace index out of range");
    StateVector projected =
        apply_on_subsystem(Operator(spaces.projectors[eigenspace_index]), psi, subsystem);
    const double prob = projected.norm_sq();
    if (prob < 1e-14)
        throw std::domain_error("collapse_onto: zero-probability projection requested");
    return collapse_impl(psi, subsystem, spaces, eigenspace_index, prob);
}

DensityMatrix reduced_state(const StateVector& psi, const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw std::invalid_argument("reduced_state: empty keep set");
    for (std::size_t k : keep)
        if (k >= psi.dims.size()) throw std::invalid_argument("reduced_state: subsystem out of range");

    std::vector<bool> kept(psi.dims.size(), false);
    for (std::size_t k : keep) kept[k] = true;

    Eigen::Index kdim = 1;
    for (std::size_t i = 0; i < psi.dims.size(); ++i)
        if (kept[i]) kdim *= psi.dims[i];

    // Decompose a flat index into (kept-part index, traced-part index).
    auto split = [&](Eigen::Index flat) {
        Eigen::Index kidx = 0, tidx = 0;
        for (std::size_t i = 0; i < psi.dims.size(); ++i) {
            Eigen::Index rest = 1;
            for (std::size_t j = i + 1; j < psi.dims.size(); ++j) rest *= psi.dims[j];
            const Eigen::Index digit = (flat / rest) % psi.dims[i];
            if (kept[i]) kidx = kidx * psi.dims[i] + digit;
            else tidx = tidx * psi.dims[i] + digit;
        }
        return std::pair<Eigen::Index, Eigen::Index>{kidx, tidx};
    };

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(kdim, kdim);
    const Eigen::Index n = psi.dim();
    std::vector<std::pair<Eigen::Index, Eigen::Index>> idx(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = split(i);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (idx[static_cast<std::size_t>(i)].second == idx[static_cast<std::size_t>(j)].second)
                rho(idx[static_cast<std::size_t>(i)].first, idx[static_cast<std::size_t>(j)].first) +=
                    psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    return DensityMatrix{std::move(rho)};
}

double overlap_mod(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("overlap_mod: dimension mismatch");
    return std::abs(a.amplitudes.dot(b.amplitudes));
}

} // namespace qrel
