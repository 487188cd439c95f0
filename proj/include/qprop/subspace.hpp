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

#include "qprop/numerics.hpp"

#include <vector>

namespace qprop {

/// Self-adjoint idempotent operator on C^dim. Construction validates both
/// properties within tol.eps and rejects non-square or non-finite input.
class Projector {
  public:
    explicit Projector(Matrix m, Tolerance tol = {});

    Index dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }

  private:
    Matrix matrix_;
};

/// Closed linear subspace of C^dim, canonically represented by its orthogonal
/// projector. Equality, containment and all lattice operations are decided at
/// the projector level; vectors are never compared directly (rays carry the
/// meaning, and basis/phase freedom makes vector comparison meaningless).
class Subspace {
  public:
    explicit Subspace(Projector p);
    explicit Subspace(Matrix projector_matrix, Tolerance tol = {});

    static Subspace zero(Index dim);
    static Subspace full(Index dim);
    /// Span of arbitrary vectors; dependent inputs are dropped.
    static Subspace from_vectors(Index dim, const std::vector<Vector>& vectors,
                                 Tolerance tol = {});

    Index dim() const { return projector_.dim(); }
    Index rank() const { return rank_; }
    const Projector& projector() const { return projector_; }
    const Matrix& matrix() const { return projector_.matrix(); }

    bool is_zero() const { return rank_ == 0; }
    bool is_full() const { return rank_ == dim(); }

  private:
    Projector projector_;
    Index rank_;
};

/// Pure state: unit vector in C^dim up to phase. The all-zero vector is
/// rejected, as is anything whose norm strays from 1 beyond tol.eps.
class StateVector {
  public:
    explicit StateVector(Vector amplitudes, Tolerance tol = {});

    Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }

  private:
    Vector amplitudes_;
};

// ---------------------------------------------------------------------------
// Lattice operations
// ---------------------------------------------------------------------------

/// The ray of a state: rank-1 subspace with projector |psi><psi|.
Subspace span_of(const StateVector& state, Tolerance tol = {});

/// Orthogonal complement, 1 - Q. Negation of the proposition.
Subspace complement(const Subspace& a, Tolerance tol = {});

/// Lattice meet A /\ B, computed as the span of ker((1-Q_A) + (1-Q_B)).
/// The set intersection and the lattice meet coincide for closed subspaces
/// in finite dimension, so one operation serves both.
Subspace meet(const Subspace& a, const Subspace& b, Tolerance tol = {});

/// Lattice join A \/ B = (A_perp /\ B_perp)_perp.
Subspace join(const Subspace& a, const Subspace& b, Tolerance tol = {});

/// B subseteq A, decided as Q_A Q_B = Q_B within 10*eps*sqrt(dim).
bool contains(const Subspace& a, const Subspace& b, Tolerance tol = {});

/// Commutability of subspaces: A /\ (A /\ B_perp)_perp subseteq B.
/// Equivalent to the projectors commuting.
bool commutes(const Subspace& a, const Subspace& b, Tolerance tol = {});

/// Kronecker product subspace of C^(d1*d2); rank multiplies.
Subspace tensor(const Subspace& a, const Subspace& b, Tolerance tol = {});

/// Projector-level equality within 10*eps*sqrt(dim).
bool approx_equal(const Subspace& a, const Subspace& b, Tolerance tol = {});

/// State membership: ||Q psi - psi|| <= 10*eps*sqrt(dim).
bool member(const StateVector& state, const Subspace& s, Tolerance tol = {});

/// Orthonormal basis of the range (eigenvectors at eigenvalue ~1), as columns.
Matrix basis_of(const Subspace& s);

}  // namespace qprop
