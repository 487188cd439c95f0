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

#include "qprop/qubit_model.hpp"
#include "qprop/valuation.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qprop {

/// Structural problem in a scene file: malformed JSON, duplicate keys,
/// unknown fields, wrong value shapes. Maps to exit code 2.
class SceneError : public std::runtime_error {
  public:
    SceneError(const std::string& message, int line = -1, int column = -1)
        : std::runtime_error(message), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// Gap-resolution request attached to a query: resolves the factor's truth
/// value inside the named context, against the named companion; with a
/// complement factor present, also assigns the two event probabilities.
struct ResolveRequest {
    std::string factor;
    std::string companion;
    std::string context;
    std::optional<std::string> complement;
};

struct Query {
    std::string semantics;  // "hilbert" | "admissible" | "superval"
    std::string expression;
    std::string state;
    std::vector<std::string> contexts;
    std::optional<ResolveRequest> resolve;
};

/// Projector declaration as written in the file; numeric validation happens
/// at compile time so the checker can report residuals instead of refusing
/// to parse.
struct RawProjector {
    enum class Form { MatrixForm, BasisForm, AxisForm };
    Form form = Form::MatrixForm;
    Matrix matrix;               // MatrixForm
    std::vector<Vector> basis;   // BasisForm
    Eigen::Vector3d axis{0, 0, 1};  // AxisForm
    int sign = 1;
};

struct RawScene {
    Index dimension = 0;
    std::vector<std::pair<std::string, Vector>> states;
    std::vector<std::pair<std::string, RawProjector>> projectors;
    std::vector<std::pair<std::string, std::vector<std::string>>> contexts;
    std::vector<Query> queries;
};

RawScene load_scene_text(const std::string& text);
RawScene load_scene_file(const std::string& path);

/// One semantic defect found while compiling a scene. Maps to exit code 1.
struct SceneIssue {
    std::string kind;     // "state" | "projector" | "context" | "query"
    std::string subject;  // the offending name
    std::string detail;
    Real residual = 0.0;
    bool has_residual = false;
};

struct CompiledScene {
    Index dimension = 0;
    Tolerance tol;
    std::vector<std::pair<std::string, StateVector>> states;
    std::vector<std::pair<std::string, Subspace>> projectors;
    std::vector<std::pair<std::string, Context>> contexts;
    std::vector<Query> queries;

    const StateVector* find_state(const std::string& name) const;
    const Subspace* find_projector(const std::string& name) const;
    const Context* find_context(const std::string& name) const;
    SubspaceTable projector_table() const;
};

struct SceneCheck {
    std::vector<SceneIssue> issues;
    std::optional<CompiledScene> scene;  // set iff issues is empty

    bool ok() const { return issues.empty(); }
};

/// Validates every state, projector and context of the raw scene, collecting
/// residual-bearing issues; on a clean pass also returns the compiled scene.
SceneCheck compile_scene(const RawScene& raw, Tolerance tol = {});

/// Expression grammar over projector names: prefix ! binds tightest, then &,
/// then |; parentheses group; whitespace is insignificant. Atom names may use
/// any characters outside the operator set.
PropExpr parse_expr(const std::string& text);

/// x | y | z | "ux,uy,uz" -> unit axis.
Axis parse_axis(const std::string& text);

}  // namespace qprop
