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

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace qprop;
using namespace qprop::testing;

namespace {

StateVector plus_state() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return StateVector(v);
}

Subspace ray(const Vector& v) {
    Vector u = v;
    u.normalize();
    return span_of(StateVector(u));
}

}  // namespace

TEST_CASE("projector type invariants") {
    Matrix good(2, 2);
    good << 1, 0, 0, 0;
    CHECK_NOTHROW(Projector{good});

    Matrix not_hermitian(2, 2);
    not_hermitian << 0, 1, 0, 0;
    CHECK_THROWS_AS(Projector{not_hermitian}, std::invalid_argument);

    Matrix not_idempotent(2, 2);
    not_idempotent << 2, 0, 0, 0;
    CHECK_THROWS_AS(Projector{not_idempotent}, std::invalid_argument);

    CHECK_THROWS_AS(Projector{Matrix::Zero(2, 3)}, std::invalid_argument);

    Matrix nan(2, 2);
    nan << std::nan(""), 0, 0, 0;
    CHECK_THROWS_AS(Projector{nan}, std::invalid_argument);
}

TEST_CASE("subspace rank and the trivial pair") {
    CHECK(Subspace::zero(3).rank() == 0);
    CHECK(Subspace::zero(3).is_zero());
    CHECK(Subspace::full(3).rank() == 3);
    CHECK(Subspace::full(3).is_full());

    Matrix q(3, 3);
    q.setZero();
    q(0, 0) = 1;
    q(2, 2) = 1;
    CHECK(Subspace(q).rank() == 2);
}

TEST_CASE("state vector rejects zero and non-unit input") {
    Vector zero = Vector::Zero(2);
    CHECK_THROWS_AS(StateVector{zero}, std::invalid_argument);

    Vector big(2);
    big << 2.0, 0.0;
    CHECK_THROWS_AS(StateVector{big}, std::invalid_argument);

    CHECK_NOTHROW(StateVector{e(2, 0)});
}

TEST_CASE("span_of: basis state, superposition, and phase invariance") {
    const Subspace s1 = span_of(StateVector(e(2, 0)));
    Matrix expected(2, 2);
    expected << 1, 0, 0, 0;
    CHECK(projector_distance(s1.matrix(), expected) < 1e-12);
    CHECK(s1.rank() == 1);

    const Subspace sp = span_of(plus_state());
    Matrix half(2, 2);
    half << 0.5, 0.5, 0.5, 0.5;
    CHECK(projector_distance(sp.matrix(), half) < 1e-12);

    // A global phase leaves the ray untouched.
    for (Real theta : {0.3, 1.0, 2.5}) {
        Vector v = std::exp(Complex(0, theta)) * e(2, 0);
        CHECK(approx_equal(span_of(StateVector(v)), s1));
    }
}

TEST_CASE("complement: trivial pair, basis ray, oblique ray") {
    CHECK(approx_equal(complement(Subspace::zero(2)), Subspace::full(2)));

    CHECK(approx_equal(complement(ray(e(2, 0))), ray(e(2, 1))));

    // complement of span((e1+e2)/sqrt 2) is span((e1-e2)/sqrt 2)
    Vector diff(2);
    diff << 1, -1;
    CHECK(approx_equal(complement(span_of(plus_state())), ray(diff)));

    CHECK(complement(ray(e(2, 0))).rank() == 1);
}

TEST_CASE("meet: oblique rays collapse to zero, idempotence, plane overlap") {
    const Subspace s1 = ray(e(2, 0));
    const Subspace sp = span_of(plus_state());

    CHECK(meet(s1, sp).is_zero());
    CHECK(approx_equal(meet(s1, s1), s1));

    // span{e1,e2} /\ span{e2,e3} = span(e2) in C^3
    const Subspace a = Subspace::from_vectors(3, {e(3, 0), e(3, 1)});
    const Subspace b = Subspace::from_vectors(3, {e(3, 1), e(3, 2)});
    Matrix expected = zero_matrix(3);
    expected(1, 1) = 1;
    CHECK(projector_distance(meet(a, b).matrix(), expected) < 1e-10);

    CHECK_THROWS_AS(meet(s1, Subspace::zero(3)), std::invalid_argument);
}

TEST_CASE("join: orthogonal rays, identity element, oblique rays") {
    const Subspace s1 = ray(e(2, 0));
    const Subspace s2 = ray(e(2, 1));
    const Subspace sp = span_of(plus_state());

    CHECK(join(s1, s2).is_full());
    CHECK(approx_equal(join(s1, Subspace::zero(2)), s1));

    // De Morgan route agrees with the direct column-space oracle.
    const Matrix oracle = gram_projector({e(2, 0), (e(2, 0) + e(2, 1)) / std::sqrt(2.0)}, 2);
    const Subspace joined = join(s1, sp);
    CHECK(projector_distance(joined.matrix(), oracle) < 1e-10);
    CHECK(joined.is_full());
}

TEST_CASE("contains: full space, oblique ray, zero subspace") {
    const Subspace s1 = ray(e(2, 0));
    CHECK(contains(Subspace::full(2), s1));
    CHECK_FALSE(contains(s1, span_of(plus_state())));
    CHECK(contains(s1, Subspace::zero(2)));
}

TEST_CASE("commutes: nested, orthogonal, oblique") {
    const Subspace s1 = ray(e(2, 0));
    const Subspace s2 = ray(e(2, 1));
    const Subspace sp = span_of(plus_state());
    const Subspace full = Subspace::full(2);

    CHECK(commutes(s1, full));  // A subseteq B
    CHECK(commutes(full, s1));
    CHECK(commutes(s1, s2));    // orthogonal

    CHECK_FALSE(commutes(s1, sp));
    CHECK_FALSE(commutes(sp, s1));
    // Cross-check: the projector commutator is far from zero.
    const Matrix comm = s1.matrix() * sp.matrix() - sp.matrix() * s1.matrix();
    CHECK(comm.norm() > 0.1);
}

TEST_CASE("tensor: rank multiplies and the explicit 4x4 product") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Subspace a = random_subspace(3, rng);
        const Subspace b = random_subspace(2, rng);
        const Subspace t = tensor(a, b);
        CHECK(t.dim() == 6);
        CHECK(t.rank() == a.rank() * b.rank());
    }

    CHECK(approx_equal(tensor(ray(e(2, 0)), ray(e(2, 0))), ray(e(4, 0))));

    // ran(P_{Sx+}) (x) ran(P_{1z-}): explicit Kronecker arithmetic.
    Matrix px(2, 2);
    px << 0.5, 0.5, 0.5, 0.5;
    Matrix pz_minus(2, 2);
    pz_minus << 0, 0, 0, 1;
    Matrix expected(4, 4);
    expected << 0, 0, 0, 0,
                0, 0.5, 0, 0.5,
                0, 0, 0, 0,
                0, 0.5, 0, 0.5;
    const Subspace t = tensor(Subspace(px), Subspace(pz_minus));
    CHECK(projector_distance(t.matrix(), expected) < 1e-12);
    CHECK(t.rank() == 1);
}

TEST_CASE("lattice laws on random subspaces") {
    Rng rng(17);
    const Tolerance tol;
    for (Index dim = 2; dim <= 6; ++dim) {
        for (int trial = 0; trial < 8; ++trial) {
            const Subspace a = random_subspace(dim, rng);
            const Subspace b = random_subspace(dim, rng);

            // Involution.
            CHECK(projector_distance(complement(complement(a)).matrix(), a.matrix()) <=
                  10.0 * tol.eps);

            // A /\ A_perp = {0}, A \/ A_perp = H.
            CHECK(meet(a, complement(a)).is_zero());
            CHECK(join(a, complement(a)).is_full());

            // De Morgan, re-verified numerically.
            CHECK(projector_distance(
                      join(a, b).matrix(),
                      complement(meet(complement(a), complement(b))).matrix()) <=
                  10.0 * tol.eps);

            // Monotone rank.
            CHECK(meet(a, b).rank() <= std::min(a.rank(), b.rank()));
            CHECK(join(a, b).rank() >= std::max(a.rank(), b.rank()));

            // Orthomodular law on a nested pair.
            const Subspace inner = random_subspace_inside(b, rng);
            REQUIRE(contains(b, inner));
            const Subspace rebuilt = join(inner, meet(complement(inner), b));
            CHECK(approx_equal(rebuilt, b));
        }
    }
}

TEST_CASE("distributivity fails in C^2") {
    const Subspace a = ray(e(2, 0));
    const Subspace b = ray(e(2, 1));
    const Subspace c = span_of(plus_state());

    const Subspace lhs = meet(a, join(b, c));
    const Subspace rhs = join(meet(a, b), meet(a, c));
    CHECK(approx_equal(lhs, a));
    CHECK(rhs.is_zero());
    CHECK_FALSE(approx_equal(lhs, rhs));
}

TEST_CASE("commutability agrees with the commutator norm") {
    Rng rng(23);
    const Tolerance tol;
    for (int trial = 0; trial < 25; ++trial) {
        const auto [a, b] = random_commuting_pair(4, rng);
        const Real comm_norm =
            (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
        CHECK(commutes(a, b) == (comm_norm <= 10.0 * tol.eps));
        CHECK(commutes(a, b));
    }
    for (int trial = 0; trial < 25; ++trial) {
        const Subspace a = random_subspace(4, rng);
        const Subspace b = random_subspace(4, rng);
        const Real comm_norm =
            (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
        CHECK(commutes(a, b) == (comm_norm <= 10.0 * tol.eps));
    }
}

TEST_CASE("member matches the direct projector test") {
    Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const Subspace p = random_subspace(4, rng);
        const StateVector psi = random_state(4, rng);
        const Vector& v = psi.amplitudes();
        const bool direct = (p.matrix() * v - v).norm() <= 10.0 * Tolerance{}.eps;
        CHECK(member(psi, p) == direct);
    }
}
