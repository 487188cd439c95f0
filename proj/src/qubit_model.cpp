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

#include "qprop/qubit_model.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace qprop {

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0.0, 0.0), Complex(0.0, -1.0),
         Complex(0.0, 1.0), Complex(0.0, 0.0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

Vector kron_vec(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

}  // namespace

Axis::Axis(Eigen::Vector3d direction, Tolerance tol) : direction_(std::move(direction)) {
    if (!direction_.allFinite()) {
        throw std::invalid_argument("Axis: components must be finite");
    }
    if (std::abs(direction_.norm() - 1.0) > tol.eps) {
        throw std::invalid_argument("Axis: direction must be a unit vector");
    }
}

Projector spin_projector(const Axis& u, int sign, Tolerance tol) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("spin_projector: sign must be +1 or -1");
    }
    const Eigen::Vector3d& d = u.direction();
    const Matrix u_dot_sigma = d(0) * pauli_x() + d(1) * pauli_y() + d(2) * pauli_z();
    Matrix p = (identity(2) + static_cast<Real>(sign) * u_dot_sigma) / 2.0;
    return Projector(std::move(p), tol);
}

Context spin_context(const std::string& name, const Axis& u, Tolerance tol) {
    return Context{name, {spin_projector(u, +1, tol), spin_projector(u, -1, tol)}};
}

SpaceLayout build_se_space(const ModelConfig& cfg) {
    if (cfg.n_env < 1) {
        throw std::invalid_argument("build_se_space: n_env must be positive");
    }
    if (1 + cfg.n_env > 10) {
        throw std::invalid_argument("build_se_space: more than 10 qubits total");
    }
    if (cfg.paste_slot < 1 || cfg.paste_slot > cfg.n_env) {
        throw std::invalid_argument("build_se_space: paste_slot out of range");
    }
    SpaceLayout layout;
    layout.n_slots = 1 + cfg.n_env;
    layout.dim = Index(1) << layout.n_slots;
    return layout;
}

Matrix lift_on_slot(const Matrix& op, int slot, int n_slots) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("lift_on_slot: expected a single-qubit operator");
    }
    if (slot < 0 || slot >= n_slots) {
        throw std::invalid_argument("lift_on_slot: slot out of range");
    }
    Matrix out = Matrix::Identity(1, 1);
    for (int s = 0; s < n_slots; ++s) {
        const Matrix& factor = (s == slot) ? op : identity(2);
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

Context build_se_context(const ModelConfig& cfg, Tolerance tol) {
    const SpaceLayout layout = build_se_space(cfg);
    if (cfg.paste_slot != 1) {
        throw std::invalid_argument("build_se_context: only paste_slot = 1 is supported");
    }

    const Matrix up_plus = spin_projector(cfg.u_prime, +1, tol).matrix();
    const Matrix up_minus = spin_projector(cfg.u_prime, -1, tol).matrix();
    const Matrix upp_plus = spin_projector(cfg.u_double_prime, +1, tol).matrix();
    const Matrix upp_minus = spin_projector(cfg.u_double_prime, -1, tol).matrix();
    if (projector_distance(up_plus, upp_plus) <= 10.0 * tol.scaled(2) ||
        projector_distance(up_plus, upp_minus) <= 10.0 * tol.scaled(2)) {
        throw std::invalid_argument("build_se_context: axes share a spin context; "
                                    "the pasting is degenerate");
    }

    const Matrix z_plus = spin_projector(Axis::z(), +1, tol).matrix();
    const Matrix z_minus = spin_projector(Axis::z(), -1, tol).matrix();

    // Identity padding over environment slots 2..n_env.
    Matrix pad = Matrix::Identity(1, 1);
    for (int k = 2; k <= cfg.n_env; ++k) {
        pad = Eigen::kroneckerProduct(pad, identity(2)).eval();
    }

    auto make_member = [&](const Matrix& s_part, const Matrix& env_part) {
        Matrix m = Eigen::kroneckerProduct(s_part, env_part).eval();
        m = Eigen::kroneckerProduct(m, pad).eval();
        return Projector(std::move(m), tol);
    };

    Context c;
    c.name = "SE";
    c.members.push_back(make_member(up_plus, z_minus));
    c.members.push_back(make_member(up_minus, z_minus));
    c.members.push_back(make_member(upp_plus, z_plus));
    c.members.push_back(make_member(upp_minus, z_plus));

    if (c.dim() != layout.dim) {
        throw std::logic_error("build_se_context: member dimension disagrees "
                               "with the slot layout");
    }
    const ContextReport report = validate_context(c, tol);
    if (!report.ok()) {
        throw std::logic_error("build_se_context: constructed context failed "
                               "validation: " + report.issues.front().check);
    }
    return c;
}

std::vector<StateVector> entangled_states(const ModelConfig& cfg, Tolerance tol) {
    const SpaceLayout layout = build_se_space(cfg);

    // Unit vectors spanning the u'' eigenrays; the relative phase is then
    // fixed so that (phi_plus + z * phi_minus)/sqrt(2) lands in ran(P_{u'+}).
    // The coefficient z has unit norm exactly when the two u''-components of
    // the u' eigenstates carry equal weight.
    const Matrix upp_plus = spin_projector(cfg.u_double_prime, +1, tol).matrix();
    const Matrix upp_minus = spin_projector(cfg.u_double_prime, -1, tol).matrix();
    const Matrix up_plus = spin_projector(cfg.u_prime, +1, tol).matrix();

    auto unit_column = [](const Matrix& projector) {
        Eigen::Index row = 0, col = 0;
        projector.cwiseAbs().maxCoeff(&row, &col);
        Vector v = projector.col(col);
        return Vector(v / v.norm());
    };

    const Vector phi_plus = unit_column(upp_plus);
    const Vector phi_minus = unit_column(upp_minus);

    const Vector a = phi_plus - up_plus * phi_plus;    // (1 - P) phi_+
    const Vector b = phi_minus - up_plus * phi_minus;  // (1 - P) phi_-
    if (b.norm() <= tol.eps) {
        throw std::invalid_argument("entangled_states: axes are parallel");
    }
    const Complex z = -(b.adjoint() * a)(0) / b.squaredNorm();
    if (std::abs(std::abs(z) - 1.0) > 10.0 * tol.eps) {
        throw std::invalid_argument("entangled_states: axes violate the equal-norm "
                                    "relation (coefficient ratio " +
                                    std::to_string(std::abs(z)) + ")");
    }

    const Vector phi_minus_aligned = z * phi_minus;
    Vector s_plus = (phi_plus + phi_minus_aligned) / std::sqrt(2.0);
    Vector s_minus = (phi_plus - phi_minus_aligned) / std::sqrt(2.0);
    s_plus.normalize();
    s_minus.normalize();

    const Vector env_down = unit_column(spin_projector(Axis::z(), -1, tol).matrix());
    const Vector env_up = unit_column(spin_projector(Axis::z(), +1, tol).matrix());

    auto assemble = [&](const Vector& s_part) {
        Vector psi = kron_vec(s_part, env_down);
        for (int k = 2; k <= cfg.n_env; ++k) {
            psi = kron_vec(psi, env_up);
        }
        if (psi.size() != layout.dim) {
            throw std::logic_error("entangled_states: layout mismatch");
        }
        return StateVector(std::move(psi), tol);
    };

    return {assemble(s_plus), assemble(s_minus)};
}

Real born_weight(const StateVector& state, const Subspace& p) {
    if (state.dim() != p.dim()) {
        throw std::invalid_argument("born_weight: dimension mismatch");
    }
    const Real w = (p.matrix() * state.amplitudes()).squaredNorm();
    return std::min(std::max(w, 0.0), 1.0);
}

const char* to_string(ProbabilityReport::Method m) {
    return m == ProbabilityReport::Method::Indifference ? "indifference"
                                                        : "born-extension";
}

ProbabilityReport assign_probabilities(const StateVector& state, const Subspace& plus,
                                       const Subspace& minus, const Context& c,
                                       Tolerance tol) {
    if (plus.dim() != minus.dim()) {
        throw std::invalid_argument("assign_probabilities: factor dimension mismatch");
    }
    if (!approx_equal(complement(plus, tol), minus, tol)) {
        throw std::invalid_argument("assign_probabilities: factors are not "
                                    "complements on the system slot");
    }
    if (c.dim() != state.dim() || c.dim() % plus.dim() != 0) {
        throw std::invalid_argument("assign_probabilities: composite dimension "
                                    "mismatch");
    }
    const Index env_dim = c.dim() / plus.dim();

    // Each factor needs a companion in the context making the tensor product
    // a lattice element; extract it from a member of the form Q_f (x) Q_e.
    auto companion_for = [&](const Subspace& factor) -> Subspace {
        Eigen::Index row = 0, col = 0;
        factor.matrix().cwiseAbs().maxCoeff(&row, &col);
        const Complex pivot = factor.matrix()(row, col);
        for (const Projector& m : c.members) {
            Matrix block = m.matrix().block(row * env_dim, col * env_dim,
                                            env_dim, env_dim) / pivot;
            // Symmetrize away the rounding skew before validating.
            block = (block + block.adjoint()) / 2.0;
            const Matrix rebuilt =
                Eigen::kroneckerProduct(factor.matrix(), block).eval();
            const bool factors =
                projector_distance(rebuilt, m.matrix()) <= 10.0 * tol.scaled(c.dim());
            const bool is_projector =
                (block * block - block).norm() <= tol.eps && block.norm() > tol.eps;
            if (factors && is_projector) {
                return Subspace(Projector(std::move(block), tol));
            }
        }
        throw std::invalid_argument("assign_probabilities: no context member "
                                    "factors through the given subspace");
    };

    const Subspace companion_plus = companion_for(plus);
    const Subspace companion_minus = companion_for(minus);

    const ValueSet gap_plus = resolve_gap(plus, companion_plus, state, c, tol);
    const ValueSet gap_minus = resolve_gap(minus, companion_minus, state, c, tol);
    if (!gap_plus.both() || !gap_minus.both()) {
        throw std::invalid_argument("assign_probabilities: gap did not resolve to "
                                    "{TRUE, FALSE} for both factors");
    }

    const Subspace lifted_plus(
        Eigen::kroneckerProduct(plus.matrix(), identity(env_dim)).eval(), tol);
    const Subspace lifted_minus(
        Eigen::kroneckerProduct(minus.matrix(), identity(env_dim)).eval(), tol);

    // Exclusivity: the conjunction of a factor with its complement is false.
    if (evaluate_hilbert(meet(lifted_plus, lifted_minus, tol), state, tol) !=
        TruthValue::False) {
        throw std::invalid_argument("assign_probabilities: events are not exclusive");
    }
    // Exhaustivity: the disjunction covers the whole space.
    if (evaluate_hilbert(join(lifted_plus, lifted_minus, tol), state, tol) !=
        TruthValue::True) {
        throw std::invalid_argument("assign_probabilities: events are not exhaustive");
    }

    ProbabilityReport report;
    report.event_1 = "the plus factor holds in the state";
    report.event_2 = "the minus factor holds in the state";

    const Real w_plus = born_weight(state, lifted_plus);
    const Real w_minus = born_weight(state, lifted_minus);
    const Real norm_plus = std::sqrt(w_plus);
    const Real norm_minus = std::sqrt(w_minus);

    if (std::abs(norm_plus - norm_minus) <= tol.eps) {
        report.pr_e1 = 0.5;
        report.pr_e2 = 0.5;
        report.method = ProbabilityReport::Method::Indifference;
    } else {
        report.pr_e1 = w_plus;
        report.pr_e2 = w_minus;
        report.method = ProbabilityReport::Method::BornExtension;
        report.note = "unequal amplitude norms: probabilities taken from squared "
                      "norms, beyond the indifference derivation";
    }
    report.sum_rule_residual = std::abs(report.pr_e1 + report.pr_e2 - 1.0);
    return report;
}

bool DemoStateRecord::conjunctions_false() const {
    return conj_plus == TruthValue::False && conj_minus == TruthValue::False;
}

bool DemoStateRecord::gaps_resolved() const {
    return gap_plus.both() && gap_minus.both();
}

bool DemoStateRecord::probabilities_even(Real tol_abs) const {
    return std::abs(probabilities.pr_e1 - 0.5) <= tol_abs &&
           std::abs(probabilities.pr_e2 - 0.5) <= tol_abs;
}

DemoReport run_two_state_demo(const ModelConfig& cfg, Tolerance tol) {
    const Context se = build_se_context(cfg, tol);
    const std::vector<StateVector> states = entangled_states(cfg, tol);
    const Index env_dim = Index(1) << cfg.n_env;

    const Subspace factor_plus(spin_projector(cfg.u_double_prime, +1, tol).matrix(), tol);
    const Subspace factor_minus(spin_projector(cfg.u_double_prime, -1, tol).matrix(), tol);

    // P_{1z+} on the environment block: z+ on slot 1, identity beyond.
    const Subspace companion_z_plus(
        lift_on_slot(spin_projector(Axis::z(), +1, tol).matrix(), 0, cfg.n_env), tol);

    const Subspace lifted_companion(
        Eigen::kroneckerProduct(identity(2), companion_z_plus.matrix()).eval(), tol);

    DemoReport report;
    const char* labels[2] = {"psi(S u'+) (x) psi(1 z-)", "psi(S u'-) (x) psi(1 z-)"};
    bool all = true;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const StateVector& psi = states[i];
        DemoStateRecord record;
        record.state_label = labels[i];

        record.conj_plus =
            evaluate_hilbert(tensor(factor_plus, companion_z_plus, tol), psi, tol);
        record.conj_minus =
            evaluate_hilbert(tensor(factor_minus, companion_z_plus, tol), psi, tol);
        record.companion = evaluate_hilbert(lifted_companion, psi, tol);

        record.gap_plus = resolve_gap(factor_plus, companion_z_plus, psi, se, tol);
        record.gap_minus = resolve_gap(factor_minus, companion_z_plus, psi, se, tol);

        const Subspace lifted_plus(
            Eigen::kroneckerProduct(factor_plus.matrix(), identity(env_dim)).eval(), tol);
        const Subspace lifted_minus(
            Eigen::kroneckerProduct(factor_minus.matrix(), identity(env_dim)).eval(), tol);
        record.exclusive =
            evaluate_hilbert(meet(lifted_plus, lifted_minus, tol), psi, tol) ==
            TruthValue::False;
        record.exhaustive =
            evaluate_hilbert(join(lifted_plus, lifted_minus, tol), psi, tol) ==
            TruthValue::True;

        record.probabilities = assign_probabilities(psi, factor_plus, factor_minus,
                                                    se, tol);

        all = all && record.conjunctions_false() &&
              record.companion == TruthValue::False && record.gaps_resolved() &&
              record.exclusive && record.exhaustive &&
              record.probabilities_even(1e-9);
        report.states.push_back(std::move(record));
    }
    report.all_pass = all;
    return report;
}

}  // namespace qprop
