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

#include "qprop/valuation.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>

namespace qprop {

const char* to_string(TruthValue v) {
    switch (v) {
        case TruthValue::True: return "TRUE";
        case TruthValue::False: return "FALSE";
        case TruthValue::Indefinite: return "INDEFINITE";
    }
    return "INDEFINITE";
}

std::string to_string(const ValueSet& v) {
    if (v.both()) return "{TRUE, FALSE}";
    if (v.allows_true) return "{TRUE}";
    return "{FALSE}";
}

PropExpr PropExpr::atom(std::string name) {
    PropExpr e;
    e.kind = Kind::Atom;
    e.name = std::move(name);
    return e;
}

PropExpr PropExpr::negation(PropExpr child) {
    PropExpr e;
    e.kind = Kind::Not;
    e.children.push_back(std::move(child));
    return e;
}

PropExpr PropExpr::conjunction(PropExpr lhs, PropExpr rhs) {
    PropExpr e;
    e.kind = Kind::And;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}

PropExpr PropExpr::disjunction(PropExpr lhs, PropExpr rhs) {
    PropExpr e;
    e.kind = Kind::Or;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}

Subspace denote(const PropExpr& expr, const SubspaceTable& table, Tolerance tol) {
    switch (expr.kind) {
        case PropExpr::Kind::Atom: {
            auto it = table.find(expr.name);
            if (it == table.end()) {
                throw std::invalid_argument("denote: unresolved projector name '" +
                                            expr.name + "'");
            }
            return it->second;
        }
        case PropExpr::Kind::Not:
            return complement(denote(expr.children[0], table, tol), tol);
        case PropExpr::Kind::And:
            return meet(denote(expr.children[0], table, tol),
                        denote(expr.children[1], table, tol), tol);
        case PropExpr::Kind::Or:
            return join(denote(expr.children[0], table, tol),
                        denote(expr.children[1], table, tol), tol);
    }
    throw std::logic_error("denote: unreachable");
}

TruthValue evaluate_hilbert(const Subspace& p, const StateVector& state,
                            Tolerance tol) {
    if (p.dim() != state.dim()) {
        throw std::invalid_argument("evaluate_hilbert: dimension mismatch");
    }
    const Subspace ray = span_of(state, tol);
    const Subspace m = meet(ray, p, tol);
    return contains(m, ray, tol) ? TruthValue::True : TruthValue::False;
}

TruthValue evaluate_general(const Subspace& h_psi, const Subspace& p,
                            const StateVector& state, Tolerance tol) {
    if (h_psi.dim() != state.dim() || p.dim() != state.dim()) {
        throw std::invalid_argument("evaluate_general: dimension mismatch");
    }
    if (!member(state, h_psi, tol)) {
        throw std::invalid_argument("evaluate_general: state lies outside the "
                                    "preparation subspace");
    }
    return member(state, meet(h_psi, p, tol), tol) ? TruthValue::True
                                                   : TruthValue::False;
}

namespace {

// The queried projector occurs in a context if some member matches it at the
// projector level.
bool matches(const Projector& a, const Projector& b, Tolerance tol) {
    return a.dim() == b.dim() &&
           projector_distance(a.matrix(), b.matrix()) <= 10.0 * tol.scaled(a.dim());
}

}  // namespace

AdmissibilityReport evaluate_admissible_report(const Projector& p,
                                               const StateVector& state,
                                               const ContextSet& set,
                                               Tolerance tol) {
    AdmissibilityReport report;

    if (p.dim() != state.dim()) {
        throw std::invalid_argument("evaluate_admissible: dimension mismatch");
    }

    // The state must be prepared in its own context: the ray has to coincide
    // with the range of some member of some context in O.
    const Subspace ray = span_of(state, tol);
    bool aligned = false;
    Real best_distance = -1.0;
    for (const Context& c : set.contexts) {
        for (const Projector& m : c.members) {
            if (m.dim() != ray.dim()) continue;
            const Real d = projector_distance(m.matrix(), ray.matrix());
            if (best_distance < 0.0 || d < best_distance) best_distance = d;
            if (d <= 10.0 * tol.scaled(ray.dim())) aligned = true;
        }
    }
    if (!aligned) {
        if (best_distance >= 0.0 && best_distance <= 100.0 * tol.eps) {
            throw std::invalid_argument(
                "evaluate_admissible: state nearly aligns with a context member "
                "(projector distance " + std::to_string(best_distance) +
                "); refusing the near miss");
        }
        throw std::invalid_argument(
            "evaluate_admissible: state is not aligned with any context member");
    }

    bool occurs = false;
    bool violated = false;
    bool some_clean = false;
    for (const Context& c : set.contexts) {
        int position = -1;
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            if (matches(c.members[i], p, tol)) {
                position = static_cast<int>(i);
                break;
            }
        }
        if (position < 0) continue;
        occurs = true;

        std::vector<TruthValue> values;
        values.reserve(c.members.size());
        for (const Projector& m : c.members) {
            values.push_back(evaluate_hilbert(Subspace(m), state, tol));
        }

        AdmissibilityContextVerdict verdict;
        verdict.context = c.name;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] == TruthValue::True) {
                for (std::size_t j = 0; j < values.size(); ++j) {
                    if (j != i && values[j] != TruthValue::False) {
                        verdict.violates_i = true;
                    }
                }
            }
            bool rest_false = true;
            for (std::size_t j = 0; j < values.size(); ++j) {
                if (j != i && values[j] != TruthValue::False) rest_false = false;
            }
            if (rest_false && values[i] != TruthValue::True) {
                verdict.violates_ii = true;
            }
        }
        if (verdict.violates_i || verdict.violates_ii) {
            violated = true;
        } else {
            some_clean = true;
        }
        report.verdicts.push_back(std::move(verdict));
    }

    if (!occurs) {
        throw std::invalid_argument(
            "evaluate_admissible: projector occurs in no context of the set");
    }

    report.candidate = evaluate_hilbert(Subspace(p), state, tol);
    report.value = violated ? TruthValue::Indefinite : report.candidate;
    if (violated && some_clean) {
        report.warnings.push_back(
            "contexts disagree on admissibility; any violation gates the value");
    }
    return report;
}

TruthValue evaluate_admissible(const Projector& p, const StateVector& state,
                               const ContextSet& set, Tolerance tol) {
    return evaluate_admissible_report(p, state, set, tol).value;
}

namespace {

struct SupervalNode {
    Subspace denoted;
    bool defined;
};

bool co_inhabit(const std::vector<InvariantLattice>& lattices, const Subspace& a,
                const Subspace& b, Tolerance tol) {
    for (const InvariantLattice& lat : lattices) {
        if (lat.contains_element(a, tol) && lat.contains_element(b, tol)) return true;
    }
    return false;
}

// Meets and joins are lattice operations, so a compound is well formed only
// when its operands are elements of one generated lattice; the denotation is
// still computed numerically, which agrees with the lattice operation there.
SupervalNode reduce(const PropExpr& expr, const SubspaceTable& table,
                    const std::vector<InvariantLattice>& lattices, Tolerance tol) {
    switch (expr.kind) {
        case PropExpr::Kind::Atom: {
            auto it = table.find(expr.name);
            if (it == table.end()) {
                throw std::invalid_argument(
                    "evaluate_supervaluation: unresolved projector name '" +
                    expr.name + "'");
            }
            return {it->second, true};
        }
        case PropExpr::Kind::Not: {
            SupervalNode child = reduce(expr.children[0], table, lattices, tol);
            return {complement(child.denoted, tol), child.defined};
        }
        case PropExpr::Kind::And:
        case PropExpr::Kind::Or: {
            SupervalNode lhs = reduce(expr.children[0], table, lattices, tol);
            SupervalNode rhs = reduce(expr.children[1], table, lattices, tol);
            const bool defined = lhs.defined && rhs.defined &&
                                 co_inhabit(lattices, lhs.denoted, rhs.denoted, tol);
            Subspace value = expr.kind == PropExpr::Kind::And
                                 ? meet(lhs.denoted, rhs.denoted, tol)
                                 : join(lhs.denoted, rhs.denoted, tol);
            return {std::move(value), defined};
        }
    }
    throw std::logic_error("evaluate_supervaluation: unreachable");
}

}  // namespace

TruthValue evaluate_supervaluation(const PropExpr& expr, const StateVector& state,
                                   const ContextSet& set, const SubspaceTable& table,
                                   Tolerance tol) {
    std::vector<InvariantLattice> lattices;
    lattices.reserve(set.contexts.size());
    for (const Context& c : set.contexts) {
        lattices.push_back(generated_lattice(c, tol));
    }

    const Subspace ray = span_of(state, tol);
    bool ray_homed = false;
    for (const InvariantLattice& lat : lattices) {
        if (lat.contains_element(ray, tol)) {
            ray_homed = true;
            break;
        }
    }
    if (!ray_homed) {
        throw std::invalid_argument(
            "evaluate_supervaluation: the state's ray belongs to no generated "
            "lattice of the context set");
    }

    const SupervalNode root = reduce(expr, table, lattices, tol);
    if (!root.defined) return TruthValue::Indefinite;
    if (!co_inhabit(lattices, root.denoted, ray, tol)) return TruthValue::Indefinite;
    return evaluate_hilbert(root.denoted, state, tol);
}

ValueSet resolve_gap(const Subspace& factor, const Subspace& companion,
                     const StateVector& state, const Context& c, Tolerance tol) {
    const Index dim = factor.dim() * companion.dim();
    if (dim != state.dim() || dim != c.dim()) {
        throw std::invalid_argument("resolve_gap: factor (x) companion does not "
                                    "match the composite dimension");
    }

    const Subspace conjunction = tensor(factor, companion, tol);
    const InvariantLattice lattice = generated_lattice(c, tol);
    if (!lattice.contains_element(conjunction, tol)) {
        throw std::invalid_argument("resolve_gap: factor (x) companion is not an "
                                    "element of the context's lattice");
    }

    // The state must reside in a proper lattice element; H alone would hold
    // every state and carries no pasting information.
    bool housed = false;
    for (const Subspace& element : lattice.elements) {
        if (element.is_full() || element.is_zero()) continue;
        if (member(state, element, tol)) {
            housed = true;
            break;
        }
    }
    if (!housed) {
        throw std::invalid_argument("resolve_gap: state does not reside in any "
                                    "proper element of the context's lattice");
    }

    const Subspace lifted_companion(
        Eigen::kroneckerProduct(identity(factor.dim()), companion.matrix()).eval(),
        tol);

    const TruthValue conj = evaluate_hilbert(conjunction, state, tol);
    const TruthValue comp = evaluate_hilbert(lifted_companion, state, tol);

    if (conj == TruthValue::True) return {true, false};
    if (comp == TruthValue::False) return {true, true};  // falsity explained away
    return {false, true};
}

std::optional<int> bivaluation_measure(const Subspace& p, const StateVector& state,
                                       Semantics semantics, const ContextSet* set,
                                       Tolerance tol) {
    TruthValue value = TruthValue::Indefinite;
    switch (semantics) {
        case Semantics::Hilbert:
            value = evaluate_hilbert(p, state, tol);
            break;
        case Semantics::Admissible: {
            if (set == nullptr) {
                throw std::invalid_argument(
                    "bivaluation_measure: admissible semantics needs a context set");
            }
            value = evaluate_admissible(Projector(p.matrix(), tol), state, *set, tol);
            break;
        }
        case Semantics::Superval: {
            if (set == nullptr) {
                throw std::invalid_argument(
                    "bivaluation_measure: supervaluation needs a context set");
            }
            SubspaceTable table{{"p", p}};
            value = evaluate_supervaluation(PropExpr::atom("p"), state, *set, table, tol);
            break;
        }
    }
    if (value == TruthValue::Indefinite) return std::nullopt;
    return value == TruthValue::True ? 1 : 0;
}

}  // namespace qprop
