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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qprop {

/// Projective resolution of identity: two or more nontrivial projectors,
/// pairwise orthogonal, summing to the identity. Validity is checked by
/// validate_context, not at construction, so that the checker can report
/// residuals on broken inputs.
struct Context {
    std::string name;
    std::vector<Projector> members;

    Index dim() const { return members.empty() ? 0 : members.front().dim(); }
};

/// The finite, user-supplied family of contexts a valuation quantifies over.
struct ContextSet {
    std::vector<Context> contexts;
};

/// One failed check inside a context validation report.
struct ContextIssue {
    std::string check;   // "size" | "dimension" | "nontrivial" | "orthogonal" | "sum"
    int i = -1;          // offending member (or first of the pair)
    int j = -1;          // second of the pair, for orthogonality
    Real residual = 0.0;
    std::string detail;
};

struct ContextReport {
    std::vector<ContextIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks the resolution-of-identity requirements member by member and
/// reports every violation with its numeric residual.
ContextReport validate_context(const Context& c, Tolerance tol = {});

/// True iff the two contexts share a member (within projector distance).
bool intertwined(const Context& a, const Context& b, Tolerance tol = {});

/// True iff p maps s into itself, tested as contains(s, span(p * basis(s))).
bool is_invariant(const Subspace& s, const Projector& p, Tolerance tol = {});

/// True iff s is invariant under every member of c.
bool in_lattice(const Subspace& s, const Context& c, Tolerance tol = {});

/// The Boolean sublattice generated by the member ranges of a context: all
/// 2^n subset-joins, indexed by subset bitmask (empty set -> {0}, full -> H).
/// This is the maximal family of invariant subspaces that is literally
/// Boolean; members of rank >= 2 admit further invariant subspaces, but those
/// do not mutually commute and are deliberately not enumerated.
struct InvariantLattice {
    Context generator_context;
    std::vector<Subspace> elements;  // elements[mask] = join of generators in mask

    std::size_t size() const { return elements.size(); }

    /// Index of the element matching s within projector distance, if any.
    std::optional<std::size_t> index_of(const Subspace& s, Tolerance tol = {}) const;
    bool contains_element(const Subspace& s, Tolerance tol = {}) const;
};

/// Enumerates the generated lattice. Throws on invalid contexts and on
/// contexts with more than 16 members (size guard).
InvariantLattice generated_lattice(const Context& c, Tolerance tol = {});

}  // namespace qprop
