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

#include "helpers.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

using namespace qprop;
using namespace qprop::testing;

TEST_CASE("tolerance bounds") {
    CHECK(Tolerance{}.eps == doctest::Approx(1e-9));
    CHECK_NOTHROW(Tolerance(1e-6));
    CHECK_THROWS_AS(Tolerance(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Tolerance(-1e-9), std::invalid_argument);
    CHECK_THROWS_AS(Tolerance(1e-3), std::invalid_argument);
    CHECK_THROWS_AS(Tolerance(0.5), std::invalid_argument);
}

TEST_CASE("projector_distance basics") {
    Matrix p(2, 2);
    p << 1, 0, 0, 0;
    Matrix q(2, 2);
    q << 0, 0, 0, 1;

    CHECK(projector_distance(p, p) == 0.0);
    CHECK(projector_distance(p, q) == doctest::Approx(std::sqrt(2.0)));
    CHECK(projector_distance(p, zero_matrix(2)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(projector_distance(p, zero_matrix(3)), std::invalid_argument);
}

TEST_CASE("orthonormalize drops duplicates and empty input") {
    const Vector e1 = e(2, 0);

    auto basis = orthonormalize({e1, e1});
    REQUIRE(basis.size() == 1);
    CHECK((basis[0] * basis[0].adjoint() - e1 * e1.adjoint()).norm() < 1e-12);

    CHECK(orthonormalize({}).empty());
    CHECK_THROWS_AS(orthonormalize({e(2, 0), e(3, 0)}), std::invalid_argument);
}

TEST_CASE("orthonormalize span matches the Gram-projector oracle") {
    const Vector e1 = e(2, 0);
    const Vector e2 = e(2, 1);
    const std::vector<Vector> input{e1, e1 + e2};

    // Oracle: P = V (V^H V)^{-1} V^H on the raw input spans {e1, e2}.
    const Matrix expected = gram_projector(input, 2);
    CHECK((expected - identity(2)).norm() < 1e-12);

    const auto basis = orthonormalize(input);
    REQUIRE(basis.size() == 2);
    Matrix q = zero_matrix(2);
    for (const Vector& v : basis) q += v * v.adjoint();
    CHECK((q - expected).norm() < 1e-10);

    // Pairwise orthonormality.
    for (const Vector& v : basis) CHECK(v.norm() == doctest::Approx(1.0));
    CHECK(std::abs((basis[0].adjoint() * basis[1])(0)) < 1e-12);
}

TEST_CASE("orthonormalize is idempotent on its own output") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vector> input;
        for (int k = 0; k < 4; ++k) input.push_back(random_vector(5, rng));
        const auto first = orthonormalize(input);
        const auto second = orthonormalize(first);
        REQUIRE(first.size() == second.size());
        Matrix p1 = zero_matrix(5);
        for (const Vector& v : first) p1 += v * v.adjoint();
        Matrix p2 = zero_matrix(5);
        for (const Vector& v : second) p2 += v * v.adjoint();
        CHECK(projector_distance(p1, p2) <= 10.0 * Tolerance{}.eps);
    }
}

TEST_CASE("null_space on the trivial matrices") {
    CHECK(null_space(zero_matrix(2)).size() == 2);
    CHECK(null_space(identity(2)).empty());
    CHECK_THROWS_AS(null_space(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("null_space of diag(1,0) is span(e2), against the eigensolver oracle") {
    Matrix m(2, 2);
    m << 1, 0, 0, 0;

    // Oracle: direct eigendecomposition, eigenvectors below the cutoff.
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    REQUIRE(es.eigenvalues()(0) == doctest::Approx(0.0));

    const auto basis = null_space(m);
    REQUIRE(basis.size() == 1);
    const Vector e2 = e(2, 1);
    CHECK((basis[0] * basis[0].adjoint() - e2 * e2.adjoint()).norm() < 1e-12);
}

TEST_CASE("null_space residual bound and complement-span property") {
    Rng rng(11);
    const Tolerance tol;
    for (int trial = 0; trial < 20; ++trial) {
        // Hermitian PSD input of the shape the engine uses: sums of projectors.
        const Subspace a = random_subspace(5, rng);
        const Subspace b = random_subspace(5, rng);
        const Matrix m = (identity(5) - a.matrix()) + (identity(5) - b.matrix());

        const auto kernel = null_space(m, tol);
        for (const Vector& v : kernel) {
            CHECK((m * v).norm() <= 10.0 * tol.eps);
        }

        // Kernel basis plus its orthogonal complement spans C^5.
        Eigen::SelfAdjointEigenSolver<Matrix> es(m);
        Matrix all = zero_matrix(5);
        for (const Vector& v : kernel) all += v * v.adjoint();
        const Real top = std::max(es.eigenvalues()(4), 1.0);
        for (Index i = 0; i < 5; ++i) {
            if (es.eigenvalues()(i) > tol.eps * top) {
                all += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
            }
        }
        CHECK(projector_distance(all, identity(5)) < 1e-10);
    }
}
