// Copyright 2026 The qprop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qprop/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace qprop {

Projector::Projector(Matrix m, Tolerance tol) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("Projector: matrix must be square");
    }
    if (matrix_.rows() < 1) {
        throw std::invalid_argument("Projector: dimension must be positive");
    }
    if (!all_finite(matrix_)) {
        throw std::invalid_argument("Projector: entries must be finite");
    }
    const Real herm = (matrix_ - matrix_.adjoint()).norm();
    if (herm > tol.eps) {
        throw std::invalid_argument("Projector: not Hermitian (residual " +
                                    std::to_string(herm) + ")");
    }
    const Real idem = (matrix_ * matrix_ - matrix_).norm();
    if (idem > tol.eps) {
        throw std::invalid_argument("Projector: not idempotent (residual " +
                                    std::to_string(idem) + ")");
    }
}

Subspace::Subspace(Projector p) : projector_(std::move(p)) {
    // Eigenvalues of a validated projector cluster at 0 and 1, so the trace
    // counts the eigenvalue-1 multiplicity.
    rank_ = static_cast<Index>(std::llround(projector_.matrix().trace().real()));
}

Subspace::Subspace(Matrix projector_matrix, Tolerance tol)
    : Subspace(Projector(std::move(projector_matrix), tol)) {}

Subspace Subspace::zero(Index dim) {
    return Subspace(Projector(zero_matrix(dim)));
}

Subspace Subspace::full(Index dim) {
    return Subspace(Projector(identity(dim)));
}

Subspace Subspace::from_vectors(Index dim, const std::vector<Vector>& vectors,
                                Tolerance tol) {
    for (const Vector& v : vectors) {
        if (v.size() != dim) {
            throw std::invalid_argument("Subspace::from_vectors: dimension mismatch");
        }
    }
    const std::vector<Vector> basis = orthonormalize(vectors, tol);
    Matrix q = zero_matrix(dim);
    for (const Vector& v : basis) {
        q += v * v.adjoint();
    }
    return Subspace(Projector(std::move(q), tol));
}

StateVector::StateVector(Vector amplitudes, Tolerance tol)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        throw std::invalid_argument("StateVector: dimension must be positive");
    }
    if (!amplitudes_.allFinite()) {
        throw std::invalid_argument("StateVector: amplitudes must be finite");
    }
    const Real n = amplitudes_.norm();
    if (n <= tol.eps) {
        throw std::invalid_argument("StateVector: the zero vector is not a state");
    }
    if (std::abs(n - 1.0) > tol.eps) {
        throw std::invalid_argument("StateVector: norm deviates from 1 by " +
                                    std::to_string(std::abs(n - 1.0)));
    }
}

namespace {

void require_same_dim(const Subspace& a, const Subspace& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(op) + ": ambient dimension mismatch");
    }
}

}  // namespace

Subspace span_of(const StateVector& state, Tolerance tol) {
    const Vector& v = state.amplitudes();
    Matrix q = v * v.adjoint();
    // Renormalize away the eps-level norm slack the StateVector allows, so
    // the outer product passes the projector idempotency check cleanly.
    q /= v.squaredNorm();
    return Subspace(Projector(std::move(q), tol));
}

Subspace complement(const Subspace& a, Tolerance tol) {
    return Subspace(Projector(identity(a.dim()) - a.matrix(), tol));
}

Subspace meet(const Subspace& a, const Subspace& b, Tolerance tol) {
    require_same_dim(a, b, "meet");
    const Matrix sum = (identity(a.dim()) - a.matrix()) +
                       (identity(b.dim()) - b.matrix());
    return Subspace::from_vectors(a.dim(), null_space(sum, tol), tol);
}

Subspace join(const Subspace& a, const Subspace& b, Tolerance tol) {
    require_same_dim(a, b, "join");
    return complement(meet(complement(a, tol), complement(b, tol), tol), tol);
}

bool contains(const Subspace& a, const Subspace& b, Tolerance tol) {
    require_same_dim(a, b, "contains");
    const Real residual = (a.matrix() * b.matrix() - b.matrix()).norm();
    return residual <= 10.0 * tol.scaled(a.dim());
}

bool commutes(const Subspace& a, const Subspace& b, Tolerance tol) {
    require_same_dim(a, b, "commutes");
    const Subspace inner = meet(a, complement(b, tol), tol);
    const Subspace lhs = meet(a, complement(inner, tol), tol);
    return contains(b, lhs, tol);
}

Subspace tensor(const Subspace& a, const Subspace& b, Tolerance tol) {
    Matrix q = Eigen::kroneckerProduct(a.matrix(), b.matrix());
    return Subspace(Projector(std::move(q), tol));
}

bool approx_equal(const Subspace& a, const Subspace& b, Tolerance tol) {
    require_same_dim(a, b, "approx_equal");
    return projector_distance(a.matrix(), b.matrix()) <= 10.0 * tol.scaled(a.dim());
}

bool member(const StateVector& state, const Subspace& s, Tolerance tol) {
    if (state.dim() != s.dim()) {
        throw std::invalid_argument("member: ambient dimension mismatch");
    }
    const Vector& v = state.amplitudes();
    return (s.matrix() * v - v).norm() <= 10.0 * tol.scaled(s.dim());
}

Matrix basis_of(const Subspace& s) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix());
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("basis_of: eigendecomposition failed");
    }
    Matrix out(s.dim(), s.rank());
    Index k = 0;
    for (Index i = 0; i < s.dim(); ++i) {
        if (es.eigenvalues()(i) > 0.5) {
            out.col(k++) = es.eigenvectors().col(i);
        }
    }
    if (k != s.rank()) {
        throw std::runtime_error("basis_of: eigenvalue-1 count disagrees with rank");
    }
    return out;
}

}  // namespace qprop
