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

#include "qprop/context.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qprop {

/// Three-valued outcome. Indefinite arises only from the admissibility-gated
/// and supervaluationist semantics; the total Hilbert-lattice valuation is
/// two-valued by construction.
enum class TruthValue { True, False, Indefinite };

const char* to_string(TruthValue v);

/// Nonempty subset of {True, False}; the resolved form of a truth-value gap.
struct ValueSet {
    bool allows_true = false;
    bool allows_false = false;

    bool singleton() const { return allows_true != allows_false; }
    bool both() const { return allows_true && allows_false; }
    bool operator==(const ValueSet&) const = default;
};

std::string to_string(const ValueSet& v);

/// Propositional expression over named projectors: atoms, negation,
/// conjunction, disjunction.
struct PropExpr {
    enum class Kind { Atom, Not, And, Or };

    Kind kind = Kind::Atom;
    std::string name;                // Atom only
    std::vector<PropExpr> children;  // Not: 1 child; And/Or: 2 children

    static PropExpr atom(std::string name);
    static PropExpr negation(PropExpr e);
    static PropExpr conjunction(PropExpr lhs, PropExpr rhs);
    static PropExpr disjunction(PropExpr lhs, PropExpr rhs);
};

/// Name resolution for expression leaves.
using SubspaceTable = std::map<std::string, Subspace>;

/// The subspace an expression denotes in the full Hilbert lattice:
/// Not -> complement, And -> meet, Or -> join. Always defined there.
Subspace denote(const PropExpr& expr, const SubspaceTable& table,
                Tolerance tol = {});

// ---------------------------------------------------------------------------
// Semantics 1: total Hilbert-lattice valuation
// ---------------------------------------------------------------------------

/// True iff the state's ray survives the meet with p (equivalently, the state
/// lies in p); false otherwise, including the incommutable case where the
/// meet collapses to {0}. Never Indefinite.
TruthValue evaluate_hilbert(const Subspace& p, const StateVector& state,
                            Tolerance tol = {});

/// Valuation with an explicit preparation subspace h_psi (not necessarily the
/// ray): true iff the state lies in h_psi /\ p. The state must lie in h_psi.
TruthValue evaluate_general(const Subspace& h_psi, const Subspace& p,
                            const StateVector& state, Tolerance tol = {});

// ---------------------------------------------------------------------------
// Semantics 2: admissibility-gated valuation
// ---------------------------------------------------------------------------

/// Per-context outcome of the admissibility check for one queried projector.
struct AdmissibilityContextVerdict {
    std::string context;
    bool violates_i = false;   // a true member with a non-false sibling
    bool violates_ii = false;  // all-but-one false without the last being true
};

struct AdmissibilityReport {
    TruthValue value = TruthValue::Indefinite;
    TruthValue candidate = TruthValue::Indefinite;  // the Hilbert value of p
    std::vector<AdmissibilityContextVerdict> verdicts;
    std::vector<std::string> warnings;
};

/// Gated valuation of the proposition ran(p): candidate values come from the
/// Hilbert valuation across every context of O containing p; a violation of
/// condition (i) or (ii) in any of them gates the result to Indefinite.
/// The state's ray must coincide with a member of some context in O; a near
/// miss within 100*eps is reported distinctly from a plain mismatch.
AdmissibilityReport evaluate_admissible_report(const Projector& p,
                                               const StateVector& state,
                                               const ContextSet& set,
                                               Tolerance tol = {});

TruthValue evaluate_admissible(const Projector& p, const StateVector& state,
                               const ContextSet& set, Tolerance tol = {});

// ---------------------------------------------------------------------------
// Semantics 3: supervaluation over the invariant-subspace lattices
// ---------------------------------------------------------------------------

/// Supervaluation: meets and joins exist only inside a single generated
/// lattice, so a compound is well formed only when its operands co-inhabit
/// one lattice of O; the whole expression has a truth value only when its
/// denotation co-inhabits a lattice with the state's ray. Tautologies and
/// contradictions denote H and {0}, which belong to every lattice, and so
/// stay definite even when their disjuncts are gappy.
TruthValue evaluate_supervaluation(const PropExpr& expr, const StateVector& state,
                                   const ContextSet& set, const SubspaceTable& table,
                                   Tolerance tol = {});

// ---------------------------------------------------------------------------
// Gap resolution and the bivaluation bridge
// ---------------------------------------------------------------------------

/// Resolves the truth-value gap of a tensor factor inside the lattice of c.
/// The composite space is treated as factor-space (x) companion-space; the
/// companion is lifted as 1 (x) Q_companion. With the conjunction true the
/// factor is pinned true; with conjunction and companion both false the
/// factor is unconstrained ({True, False}); with the companion true alone
/// the factor must be false.
ValueSet resolve_gap(const Subspace& factor, const Subspace& companion,
                     const StateVector& state, const Context& c,
                     Tolerance tol = {});

enum class Semantics { Hilbert, Admissible, Superval };

/// The bivaluation as a dispersion-free measure: True -> 1, False -> 0,
/// Indefinite -> no value (nullopt), never a number in between.
std::optional<int> bivaluation_measure(const Subspace& p, const StateVector& state,
                                       Semantics semantics,
                                       const ContextSet* set = nullptr,
                                       Tolerance tol = {});

}  // namespace qprop
