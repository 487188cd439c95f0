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

#include "qprop/context.hpp"

#include <stdexcept>

namespace qprop {

ContextReport validate_context(const Context& c, Tolerance tol) {
    ContextReport report;

    if (c.members.size() < 2) {
        report.issues.push_back({"size", -1, -1, 0.0,
                                 "a context needs two or more nontrivial projectors"});
        return report;
    }

    const Index dim = c.members.front().dim();
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        if (c.members[i].dim() != dim) {
            report.issues.push_back({"dimension", static_cast<int>(i), -1, 0.0,
                                     "member dimension differs from the first member"});
            return report;
        }
    }

    for (std::size_t i = 0; i < c.members.size(); ++i) {
        const Matrix& q = c.members[i].matrix();
        const Real from_zero = q.norm();
        const Real from_identity = (q - identity(dim)).norm();
        if (from_zero <= tol.eps) {
            report.issues.push_back({"nontrivial", static_cast<int>(i), -1, from_zero,
                                     "member is the zero projector"});
        } else if (from_identity <= tol.eps) {
            report.issues.push_back({"nontrivial", static_cast<int>(i), -1, from_identity,
                                     "member is the identity"});
        }
    }

    for (std::size_t i = 0; i < c.members.size(); ++i) {
        for (std::size_t j = i + 1; j < c.members.size(); ++j) {
            const Real residual =
                (c.members[i].matrix() * c.members[j].matrix()).norm();
            if (residual > tol.eps) {
                report.issues.push_back({"orthogonal", static_cast<int>(i),
                                         static_cast<int>(j), residual,
                                         "pairwise product is not the zero operator"});
            }
        }
    }

    Matrix sum = zero_matrix(dim);
    for (const Projector& p : c.members) sum += p.matrix();
    const Real sum_residual = (sum - identity(dim)).norm();
    if (sum_residual > tol.eps) {
        report.issues.push_back({"sum", -1, -1, sum_residual,
                                 "members do not sum to the identity"});
    }

    return report;
}

bool intertwined(const Context& a, const Context& b, Tolerance tol) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("intertwined: ambient dimension mismatch");
    }
    for (const Projector& p : a.members) {
        for (const Projector& q : b.members) {
            if (projector_distance(p.matrix(), q.matrix()) <= 10.0 * tol.scaled(a.dim())) {
                return true;
            }
        }
    }
    return false;
}

bool is_invariant(const Subspace& s, const Projector& p, Tolerance tol) {
    if (s.dim() != p.dim()) {
        throw std::invalid_argument("is_invariant: ambient dimension mismatch");
    }
    if (s.rank() == 0) return true;

    const Matrix basis = basis_of(s);
    std::vector<Vector> images;
    images.reserve(static_cast<std::size_t>(basis.cols()));
    for (Index k = 0; k < basis.cols(); ++k) {
        images.push_back(p.matrix() * basis.col(k));
    }
    const Subspace image_span = Subspace::from_vectors(s.dim(), images, tol);
    return contains(s, image_span, tol);
}

bool in_lattice(const Subspace& s, const Context& c, Tolerance tol) {
    if (s.dim() != c.dim()) {
        throw std::invalid_argument("in_lattice: ambient dimension mismatch");
    }
    for (const Projector& p : c.members) {
        if (!is_invariant(s, p, tol)) return false;
    }
    return true;
}

std::optional<std::size_t> InvariantLattice::index_of(const Subspace& s,
                                                      Tolerance tol) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (approx_equal(elements[i], s, tol)) return i;
    }
    return std::nullopt;
}

bool InvariantLattice::contains_element(const Subspace& s, Tolerance tol) const {
    return index_of(s, tol).has_value();
}

InvariantLattice generated_lattice(const Context& c, Tolerance tol) {
    const ContextReport report = validate_context(c, tol);
    if (!report.ok()) {
        throw std::invalid_argument("generated_lattice: invalid context '" + c.name +
                                    "': " + report.issues.front().check + " check failed");
    }
    const std::size_t n = c.members.size();
    if (n > 16) {
        throw std::invalid_argument("generated_lattice: more than 16 members");
    }

    // Generators are orthogonal, so the join of a subset is the sum of its
    // projectors. Orthogonality residuals up to eps accumulate across cross
    // terms, hence the widened validation tolerance for the sums.
    const Tolerance sum_tol(std::min(tol.eps * static_cast<Real>(1 + n * n), 9e-4));

    InvariantLattice lattice;
    lattice.generator_context = c;
    const Index dim = c.dim();
    const std::size_t count = std::size_t(1) << n;
    lattice.elements.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        Matrix q = zero_matrix(dim);
        for (std::size_t bit = 0; bit < n; ++bit) {
            if (mask & (std::size_t(1) << bit)) q += c.members[bit].matrix();
        }
        lattice.elements.emplace_back(Projector(std::move(q), sum_tol));
    }
    return lattice;
}

}  // namespace qprop
