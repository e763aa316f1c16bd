#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "recsel/types.hpp"

namespace recsel {

// Eigendecomposition-based cone utilities shared by the covariance
// estimator and the conic solver.

template <typename Derived>
typename Derived::PlainObject symmetrized(const Eigen::MatrixBase<Derived>& m) {
    return ((m + m.transpose()) * typename Derived::Scalar(0.5)).eval();
}

template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
    Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> es(
        symmetrized(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// Clips eigenvalues below `floor` up to `floor`. Input is symmetrized first;
// entries must be finite. If the matrix already satisfies the floor it is
// returned unchanged (exact identity path).
template <typename Derived>
typename Derived::PlainObject psd_repair(const Eigen::MatrixBase<Derived>& m,
                                         double floor = 0.0) {
    if (!m.allFinite()) {
        throw std::invalid_argument("psd_repair: non-finite entries");
    }
    auto sym = symmetrized(m);
    Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> es(sym);
    if (es.eigenvalues().minCoeff() >= floor) {
        return sym;
    }
    auto lam = es.eigenvalues().cwiseMax(floor).eval();
    return (es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose())
        .eval();
}

// Euclidean projection onto the PSD cone.
template <typename Derived>
typename Derived::PlainObject project_psd(const Eigen::MatrixBase<Derived>& m) {
    return psd_repair(m, 0.0);
}

}  // namespace recsel
