#pragma once

// Exact small-dimension quantum-state linear algebra: pure states and
// density matrices up to dimension 16, Uhlmann fidelity, von Neumann
// entropy, partial trace and the helicity-basis phase rotation.
//
// Matrix functions go through Hermitian eigen-decompositions with
// eigenvalues clamped at zero (tolerance 1e-10) to absorb round-off.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qlink/errors.hpp"

namespace qlink {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int max_state_dim = 16;
inline constexpr double state_tolerance = 1e-10;

struct PureState {
    CVector amplitudes;

    explicit PureState(CVector a) : amplitudes(std::move(a)) {
        if (amplitudes.size() < 1 || amplitudes.size() > max_state_dim)
            throw domain_error("state dimension must be in [1, 16]");
        if (std::abs(amplitudes.squaredNorm() - 1.0) > state_tolerance)
            throw domain_error("state amplitudes must be normalized (|norm^2 - 1| = " +
                               std::to_string(std::abs(amplitudes.squaredNorm() - 1.0)) + ")");
    }

    int dim() const { return static_cast<int>(amplitudes.size()); }

    static PureState qubit(Complex c, Complex d) {
        CVector v(2);
        v << c, d;
        return PureState(std::move(v));
    }
};

struct DensityMatrix {
    CMatrix entries;

    explicit DensityMatrix(CMatrix m) : entries(std::move(m)) { validate(); }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint());
    }

    int dim() const { return static_cast<int>(entries.rows()); }

    void validate() const {
        if (entries.rows() != entries.cols())
            throw domain_error("density matrix must be square");
        if (entries.rows() < 1 || entries.rows() > max_state_dim)
            throw domain_error("density matrix dimension must be in [1, 16]");
        if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > state_tolerance)
            throw domain_error("density matrix must be Hermitian");
        if (std::abs(entries.trace().real() - 1.0) > state_tolerance ||
            std::abs(entries.trace().imag()) > state_tolerance)
            throw domain_error("density matrix must have unit trace");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(entries, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -state_tolerance)
            throw domain_error("density matrix must be positive semi-definite");
    }
};

namespace detail {

/// Hermitian square root with eigenvalues clamped at zero.
inline CMatrix hermitian_sqrt(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace detail

/// Uhlmann fidelity F = Tr^2 sqrt( sqrt(rho) sigma sqrt(rho) ), evaluated
/// as the squared trace norm of sqrt(sigma) sqrt(rho). Summing singular
/// values keeps rank-deficient (pure-state) inputs accurate to ~1e-15,
/// where an eigen-decomposition of the triple product would surface
/// sqrt(noise) terms.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw dimension_error("fidelity: dimension mismatch (" + std::to_string(rho.dim()) +
                              " vs " + std::to_string(sigma.dim()) + ")");
    const CMatrix m =
        detail::hermitian_sqrt(sigma.entries) * detail::hermitian_sqrt(rho.entries);
    const Eigen::JacobiSVD<CMatrix> svd(m);
    const double tr = svd.singularValues().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

inline double fidelity(const DensityMatrix& rho, const PureState& psi) {
    return fidelity(rho, DensityMatrix::from_pure(psi));
}

/// S = -Tr[rho log2 rho] in bits; eigenvalues below 1e-12 contribute zero.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.entries, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()[i];
        if (p > 1e-12) s -= p * std::log2(p);
    }
    return s;
}

enum class Subsystem { A, B };

/// Trace out one factor of a dim_a x dim_b bipartite state (A first, index
/// = a * dim_b + b).
inline DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                                   Subsystem keep) {
    if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != rho.dim())
        throw dimension_error("partial_trace: dimension " + std::to_string(rho.dim()) +
                              " does not factorize as " + std::to_string(dim_a) + " x " +
                              std::to_string(dim_b));
    const int kept = keep == Subsystem::A ? dim_a : dim_b;
    const int other = keep == Subsystem::A ? dim_b : dim_a;
    CMatrix out = CMatrix::Zero(kept, kept);
    for (int i = 0; i < kept; ++i)
        for (int j = 0; j < kept; ++j)
            for (int k = 0; k < other; ++k) {
                const int row = keep == Subsystem::A ? i * dim_b + k : k * dim_b + i;
                const int col = keep == Subsystem::A ? j * dim_b + k : k * dim_b + j;
                out(i, j) += rho.entries(row, col);
            }
    return DensityMatrix(std::move(out));
}

/// Transport phase in the helicity basis {lambda=+1, lambda=-1}:
/// U = diag(e^{-i a}, e^{+i a}), so rho_{+-} picks up e^{-2 i a} while the
/// diagonal (and any helicity-diagonal rho) is untouched.
inline DensityMatrix apply_helicity_phase(const DensityMatrix& rho, double alpha) {
    if (rho.dim() != 2)
        throw dimension_error("helicity phase acts on a single photon (dim 2), got dim " +
                              std::to_string(rho.dim()));
    CMatrix u = CMatrix::Zero(2, 2);
    u(0, 0) = std::exp(Complex(0.0, -alpha));
    u(1, 1) = std::exp(Complex(0.0, alpha));
    return DensityMatrix(u * rho.entries * u.adjoint());
}

inline DensityMatrix maximally_mixed(int dim) {
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace qlink
