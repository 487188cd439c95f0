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

#include "qprop/valuation.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace qprop {

/// Unit direction in R^3 for spin projectors.
class Axis {
  public:
    explicit Axis(Eigen::Vector3d direction, Tolerance tol = {});

    static Axis x() { return Axis({1.0, 0.0, 0.0}); }
    static Axis y() { return Axis({0.0, 1.0, 0.0}); }
    static Axis z() { return Axis({0.0, 0.0, 1.0}); }

    const Eigen::Vector3d& direction() const { return direction_; }

  private:
    Eigen::Vector3d direction_;
};

/// Spin-1/2 projector (1 + sign * u.sigma) / 2: Hermitian, idempotent,
/// rank 1; the two signs of one axis form a valid two-member context.
Projector spin_projector(const Axis& u, int sign, Tolerance tol = {});

/// The two-member context {P_{u+}, P_{u-}} of a spin axis.
Context spin_context(const std::string& name, const Axis& u, Tolerance tol = {});

/// Configuration of the qubit (x) environment chain. Slot 0 carries the
/// system qubit; slots 1..n_env carry environment qubits, each with the
/// z-axis as its preferred (stable) context. The pasting happens at the
/// explicitly configured slot; only slot 1 is supported, matching the
/// simplification that the interesting factorization sits first in the chain.
struct ModelConfig {
    Axis u_prime = Axis::x();
    Axis u_double_prime = Axis::z();
    int n_env = 1;
    int paste_slot = 1;
};

struct SpaceLayout {
    Index dim = 0;       // 2^(1 + n_env)
    int n_slots = 0;     // 1 + n_env
};

/// Ambient dimension and slot layout of the composite space. Guards the
/// total qubit count at 10.
SpaceLayout build_se_space(const ModelConfig& cfg);

/// Lifts a single-qubit operator onto `slot` of an n_slots chain by
/// tensoring identities around it.
Matrix lift_on_slot(const Matrix& op, int slot, int n_slots);

/// The four-member pasting context on the composite space:
/// { P_{Su'+} (x) P_{1z-},  P_{Su'-} (x) P_{1z-},
///   P_{Su''+} (x) P_{1z+}, P_{Su''-} (x) P_{1z+} },
/// lifted by identity over the remaining environment slots.
Context build_se_context(const ModelConfig& cfg, Tolerance tol = {});

/// The two entangled states psi_{Su'+/-} (x) psi_{1z-} (padded with z+ on the
/// remaining environment slots). On the system slot each is the equal-norm
/// superposition (psi_{Su''+} +/- psi_{Su''-}) / sqrt(2); the construction
/// verifies the equal-norm relation numerically and rejects axis pairs that
/// break it.
std::vector<StateVector> entangled_states(const ModelConfig& cfg, Tolerance tol = {});

/// Born weight ||Q psi||^2, the standard quadratic form. Serves as an
/// independent oracle against the indifference-based probabilities.
Real born_weight(const StateVector& state, const Subspace& p);

struct ProbabilityReport {
    std::string event_1;
    std::string event_2;
    Real pr_e1 = 0.0;
    Real pr_e2 = 0.0;
    Real sum_rule_residual = 0.0;
    enum class Method { Indifference, BornExtension } method = Method::Indifference;
    std::string note;  // set when the equal-norm derivation does not apply
};

const char* to_string(ProbabilityReport::Method m);

/// Probability assignment for the two exclusive, exhaustive events "plus is
/// true" / "minus is true" in a state whose gap was resolved to {True, False}
/// for both factors. Equal S-slot amplitude norms trigger the principle of
/// indifference (1/2, 1/2); unequal norms fall back to squared amplitude
/// norms and are flagged, since only the equal-norm case is derivable from
/// exclusivity and exhaustivity alone.
ProbabilityReport assign_probabilities(const StateVector& state, const Subspace& plus,
                                       const Subspace& minus, const Context& c,
                                       Tolerance tol = {});

/// One entangled state's worth of demo checks.
struct DemoStateRecord {
    std::string state_label;
    TruthValue conj_plus;        // P_{Su''+} /\ P_{1z+}   (expected False)
    TruthValue conj_minus;       // P_{Su''-} /\ P_{1z+}   (expected False)
    TruthValue companion;        // lifted P_{1z+}         (expected False)
    ValueSet gap_plus;           // expected {True, False}
    ValueSet gap_minus;          // expected {True, False}
    bool exclusive = false;      // C+/- are False
    bool exhaustive = false;     // D is True
    ProbabilityReport probabilities;

    bool conjunctions_false() const;
    bool gaps_resolved() const;
    bool probabilities_even(Real tol_abs) const;
};

struct DemoReport {
    std::vector<DemoStateRecord> states;
    bool all_pass = false;
};

/// End-to-end run over both entangled states: conjunction falsity, companion
/// falsity, gap resolution, exclusivity/exhaustivity, and the probability
/// assignment.
DemoReport run_two_state_demo(const ModelConfig& cfg, Tolerance tol = {});

}  // namespace qprop
