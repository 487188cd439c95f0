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

#pragma once

#include "qprop/subspace.hpp"

#include <random>

namespace qprop::testing {

using Rng = std::mt19937_64;

inline Complex random_gaussian(Rng& rng) {
    std::normal_distribution<Real> dist(0.0, 1.0);
    return {dist(rng), dist(rng)};
}

inline Vector random_vector(Index dim, Rng& rng) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = random_gaussian(rng);
    return v;
}

inline StateVector random_state(Index dim, Rng& rng) {
    Vector v = random_vector(dim, rng);
    v.normalize();
    return StateVector(std::move(v));
}

/// Haar-ish random unitary from the QR factorization of a Ginibre matrix.
inline Matrix random_unitary(Index dim, Rng& rng) {
    Matrix g(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) g(i, j) = random_gaussian(rng);
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(dim, dim);
}

/// Random subspace of the given rank (uniform rank in 1..dim-1 when -1).
inline Subspace random_subspace(Index dim, Rng& rng, Index rank = -1) {
    if (rank < 0) {
        std::uniform_int_distribution<Index> dist(1, dim - 1);
        rank = dist(rng);
    }
    std::vector<Vector> vectors;
    for (Index k = 0; k < rank; ++k) vectors.push_back(random_vector(dim, rng));
    return Subspace::from_vectors(dim, vectors, Tolerance{});
}

/// Random subspace of b: span of random combinations of b's basis vectors.
inline Subspace random_subspace_inside(const Subspace& b, Rng& rng) {
    if (b.rank() == 0) return Subspace::zero(b.dim());
    std::uniform_int_distribution<Index> dist(0, b.rank());
    const Index k = dist(rng);
    const Matrix basis = basis_of(b);
    std::vector<Vector> vectors;
    for (Index i = 0; i < k; ++i) {
        vectors.push_back(basis * random_vector(b.rank(), rng));
    }
    return Subspace::from_vectors(b.dim(), vectors, Tolerance{});
}

/// Commuting pair sharing a random eigenbasis, with random 0/1 spectra.
inline std::pair<Subspace, Subspace> random_commuting_pair(Index dim, Rng& rng) {
    const Matrix u = random_unitary(dim, rng);
    std::bernoulli_distribution flip(0.5);
    Matrix d1 = Matrix::Zero(dim, dim);
    Matrix d2 = Matrix::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        if (flip(rng)) d1(i, i) = 1.0;
        if (flip(rng)) d2(i, i) = 1.0;
    }
    Matrix qa = u * d1 * u.adjoint();
    Matrix qb = u * d2 * u.adjoint();
    qa = (qa + qa.adjoint()) / 2.0;
    qb = (qb + qb.adjoint()) / 2.0;
    return {Subspace(std::move(qa)), Subspace(std::move(qb))};
}

/// Independent projector-onto-span oracle: P = V (V^H V)^{-1} V^H for
/// full-column-rank V assembled by Gram elimination of dependent columns.
inline Matrix gram_projector(const std::vector<Vector>& vectors, Index dim) {
    // Greedily keep columns that enlarge the Gram determinant away from zero.
    std::vector<Vector> kept;
    for (const Vector& v : vectors) {
        std::vector<Vector> trial = kept;
        trial.push_back(v);
        Matrix m(dim, static_cast<Index>(trial.size()));
        for (Index j = 0; j < m.cols(); ++j) m.col(j) = trial[static_cast<std::size_t>(j)];
        const Matrix gram = m.adjoint() * m;
        if (std::abs(gram.determinant()) > 1e-12) kept = std::move(trial);
    }
    if (kept.empty()) return Matrix::Zero(dim, dim);
    Matrix m(dim, static_cast<Index>(kept.size()));
    for (Index j = 0; j < m.cols(); ++j) m.col(j) = kept[static_cast<std::size_t>(j)];
    const Matrix gram = m.adjoint() * m;
    return m * gram.inverse() * m.adjoint();
}

inline Vector e(Index dim, Index i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

}  // namespace qprop::testing
