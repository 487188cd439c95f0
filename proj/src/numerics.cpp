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

#include "qprop/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace qprop {

Tolerance::Tolerance(Real e) : eps(e) {
    if (!(eps > 0.0) || !(eps < 1e-3)) {
        throw std::invalid_argument("Tolerance: eps must satisfy 0 < eps < 1e-3");
    }
}

Real Tolerance::scaled(Index dim) const {
    return eps * std::sqrt(static_cast<Real>(dim > 0 ? dim : 1));
}

Matrix identity(Index dim) {
    return Matrix::Identity(dim, dim);
}

Matrix zero_matrix(Index dim) {
    return Matrix::Zero(dim, dim);
}

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

Real projector_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("projector_distance: shape mismatch");
    }
    return (a - b).norm();
}

std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors,
                                   Tolerance tol) {
    if (vectors.empty()) return {};

    const Index dim = vectors.front().size();
    for (const Vector& v : vectors) {
        if (v.size() != dim) {
            throw std::invalid_argument("orthonormalize: dimension mismatch among inputs");
        }
    }

    Matrix stacked(dim, static_cast<Index>(vectors.size()));
    for (Index j = 0; j < stacked.cols(); ++j) {
        stacked.col(j) = vectors[static_cast<std::size_t>(j)];
    }

    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= 0.0) return {};

    std::vector<Vector> basis;
    for (Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol.eps * sigma(0)) {
            basis.push_back(svd.matrixU().col(i));
        }
    }
    return basis;
}

std::vector<Vector> null_space(const Matrix& m, Tolerance tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("null_space: matrix must be square");
    }
    if (m.rows() == 0) return {};

    // Uses are sums of projectors, so m is Hermitian PSD up to rounding;
    // symmetrizing keeps the solver on the self-adjoint path.
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("null_space: eigendecomposition failed");
    }

    const auto& lambda = es.eigenvalues();  // ascending
    const Real top = std::max(lambda(lambda.size() - 1), Real(1));
    const Real cutoff = tol.eps * top;

    std::vector<Vector> basis;
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) <= cutoff) {
            basis.push_back(es.eigenvectors().col(i));
        }
    }
    return basis;
}

Matrix columns(const std::vector<Vector>& basis, Index dim) {
    Matrix out(dim, static_cast<Index>(basis.size()));
    for (Index j = 0; j < out.cols(); ++j) {
        out.col(j) = basis[static_cast<std::size_t>(j)];
    }
    return out;
}

}  // namespace qprop
