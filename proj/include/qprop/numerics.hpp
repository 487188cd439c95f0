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

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qprop {

using Real = double;
using Complex = std::complex<Real>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Working precision for rank cutoffs, Hermiticity/idempotency checks and
/// projector-distance comparisons. Dimensionless; rank decisions are made
/// relative to the largest eigenvalue or singular value, never absolutely.
struct Tolerance {
    Real eps = 1e-9;

    Tolerance() = default;
    explicit Tolerance(Real e);

    /// eps scaled by sqrt(dim); used by containment/equality tests so that
    /// false negatives stay flat as tensor products grow the ambient space.
    Real scaled(Index dim) const;
};

Matrix identity(Index dim);
Matrix zero_matrix(Index dim);

bool all_finite(const Matrix& m);

/// Frobenius norm of A - B. Throws on shape mismatch.
Real projector_distance(const Matrix& a, const Matrix& b);

/// Orthonormal basis of the span of `vectors`, computed by singular value
/// decomposition with a relative cutoff at tol.eps. Linearly dependent (and
/// zero) inputs are dropped; the result spans the same subspace as the input.
std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors,
                                   Tolerance tol = {});

/// Orthonormal basis of ker(M) for square Hermitian positive semidefinite M:
/// the eigenvectors whose eigenvalues fall below tol.eps * max(lambda_max, 1).
std::vector<Vector> null_space(const Matrix& m, Tolerance tol = {});

/// Columns-of-matrix views of a basis, handy for building projectors.
Matrix columns(const std::vector<Vector>& basis, Index dim);

}  // namespace qprop
