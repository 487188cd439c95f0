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

#include "qprop/scene.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qprop {

namespace {

using Json = nlohmann::ordered_json;

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

void require_keys(const Json& object, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (const auto& item : object.items()) {
        if (!allowed.count(item.key())) {
            throw SceneError("unknown field '" + item.key() + "' in " + where);
        }
    }
}

Complex parse_complex(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw SceneError("expected a [re, im] pair in " + where);
    }
    return {j[0].get<Real>(), j[1].get<Real>()};
}

Vector parse_vector(const Json& j, const std::string& where) {
    if (!j.is_array()) throw SceneError("expected an amplitude array in " + where);
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Index>(i)) = parse_complex(j[i], where);
    }
    return v;
}

Matrix parse_matrix(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        throw SceneError("expected a matrix (array of rows) in " + where);
    }
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    Matrix m;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array()) throw SceneError("expected a matrix row in " + where);
        if (r == 0) {
            cols = j[r].size();
            m.resize(static_cast<Index>(rows), static_cast<Index>(cols));
        } else if (j[r].size() != cols) {
            throw SceneError("ragged matrix rows in " + where);
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Index>(r), static_cast<Index>(c)) =
                parse_complex(j[r][c], where);
        }
    }
    return m;
}

Eigen::Vector3d parse_axis_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "x") return {1, 0, 0};
        if (s == "y") return {0, 1, 0};
        if (s == "z") return {0, 0, 1};
        throw SceneError("unknown axis '" + s + "' in " + where);
    }
    if (j.is_array() && j.size() == 3 && j[0].is_number() && j[1].is_number() &&
        j[2].is_number()) {
        return {j[0].get<Real>(), j[1].get<Real>(), j[2].get<Real>()};
    }
    throw SceneError("axis must be \"x\"|\"y\"|\"z\" or a numeric triple in " + where);
}

int parse_sign(const Json& j, const std::string& where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "+") return 1;
        if (s == "-") return -1;
    }
    if (j.is_number_integer()) {
        const int s = j.get<int>();
        if (s == 1 || s == -1) return s;
    }
    throw SceneError("sign must be \"+\", \"-\", 1 or -1 in " + where);
}

RawProjector parse_projector(const Json& j, const std::string& name) {
    const std::string where = "projector '" + name + "'";
    if (!j.is_object()) throw SceneError(where + " must be an object");
    require_keys(j, {"matrix", "basis", "axis", "sign"}, where);

    RawProjector p;
    const bool has_matrix = j.contains("matrix");
    const bool has_basis = j.contains("basis");
    const bool has_axis = j.contains("axis");
    if (has_matrix + has_basis + has_axis != 1) {
        throw SceneError(where + " needs exactly one of matrix | basis | axis");
    }
    if (has_matrix) {
        p.form = RawProjector::Form::MatrixForm;
        p.matrix = parse_matrix(j.at("matrix"), where);
    } else if (has_basis) {
        p.form = RawProjector::Form::BasisForm;
        if (!j.at("basis").is_array()) {
            throw SceneError("basis must be an array of vectors in " + where);
        }
        for (const auto& v : j.at("basis")) {
            p.basis.push_back(parse_vector(v, where));
        }
    } else {
        p.form = RawProjector::Form::AxisForm;
        if (!j.contains("sign")) throw SceneError(where + " with axis needs a sign");
        p.axis = parse_axis_json(j.at("axis"), where);
        p.sign = parse_sign(j.at("sign"), where);
    }
    if (p.form != RawProjector::Form::AxisForm && j.contains("sign")) {
        throw SceneError(where + ": sign is only valid with axis form");
    }
    return p;
}

Query parse_query(const Json& j, std::size_t index) {
    const std::string where = "query #" + std::to_string(index);
    if (!j.is_object()) throw SceneError(where + " must be an object");
    require_keys(j, {"semantics", "expression", "state", "contexts", "resolve"}, where);

    Query q;
    if (!j.contains("semantics") || !j.at("semantics").is_string()) {
        throw SceneError(where + " needs a semantics string");
    }
    q.semantics = j.at("semantics").get<std::string>();
    if (!j.contains("expression") || !j.at("expression").is_string()) {
        throw SceneError(where + " needs an expression string");
    }
    q.expression = j.at("expression").get<std::string>();
    if (!j.contains("state") || !j.at("state").is_string()) {
        throw SceneError(where + " needs a state name");
    }
    q.state = j.at("state").get<std::string>();
    if (j.contains("contexts")) {
        if (!j.at("contexts").is_array()) {
            throw SceneError(where + ": contexts must be an array of names");
        }
        for (const auto& c : j.at("contexts")) {
            if (!c.is_string()) throw SceneError(where + ": context names must be strings");
            q.contexts.push_back(c.get<std::string>());
        }
    }
    if (j.contains("resolve")) {
        const Json& r = j.at("resolve");
        const std::string rwhere = where + " resolve";
        if (!r.is_object()) throw SceneError(rwhere + " must be an object");
        require_keys(r, {"factor", "companion", "context", "complement"}, rwhere);
        ResolveRequest req;
        for (const char* field : {"factor", "companion", "context"}) {
            if (!r.contains(field) || !r.at(field).is_string()) {
                throw SceneError(rwhere + " needs a '" + std::string(field) + "' name");
            }
        }
        req.factor = r.at("factor").get<std::string>();
        req.companion = r.at("companion").get<std::string>();
        req.context = r.at("context").get<std::string>();
        if (r.contains("complement")) {
            if (!r.at("complement").is_string()) {
                throw SceneError(rwhere + ": complement must be a name");
            }
            req.complement = r.at("complement").get<std::string>();
        }
        q.resolve = std::move(req);
    }
    return q;
}

}  // namespace

RawScene load_scene_text(const std::string& text) {
    // Reject duplicate keys anywhere in the document; JSON object semantics
    // would otherwise silently keep the last occurrence.
    std::vector<std::set<std::string>> key_stack;
    auto cb = [&key_stack](int /*depth*/, Json::parse_event_t event, Json& parsed) {
        if (event == Json::parse_event_t::object_start) {
            key_stack.emplace_back();
        } else if (event == Json::parse_event_t::object_end) {
            key_stack.pop_back();
        } else if (event == Json::parse_event_t::key) {
            const std::string key = parsed.get<std::string>();
            if (!key_stack.back().insert(key).second) {
                throw SceneError("duplicate key '" + key + "'");
            }
        }
        return true;
    };

    Json root;
    try {
        root = Json::parse(text, cb);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw SceneError("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + e.what(),
                         line, column);
    }

    if (!root.is_object()) throw SceneError("scene must be a JSON object");
    require_keys(root, {"schema", "dimension", "states", "projectors", "contexts",
                        "queries"},
                 "the scene");

    if (!root.contains("schema") || !root.at("schema").is_number_integer() ||
        root.at("schema").get<int>() != 1) {
        throw SceneError("scene needs \"schema\": 1");
    }
    if (!root.contains("dimension") || !root.at("dimension").is_number_integer() ||
        root.at("dimension").get<long long>() < 1) {
        throw SceneError("scene needs a positive integer dimension");
    }

    RawScene scene;
    scene.dimension = root.at("dimension").get<Index>();

    if (root.contains("states")) {
        if (!root.at("states").is_object()) throw SceneError("states must be an object");
        for (const auto& item : root.at("states").items()) {
            scene.states.emplace_back(item.key(),
                                      parse_vector(item.value(), "state '" + item.key() + "'"));
        }
    }
    if (root.contains("projectors")) {
        if (!root.at("projectors").is_object()) {
            throw SceneError("projectors must be an object");
        }
        for (const auto& item : root.at("projectors").items()) {
            scene.projectors.emplace_back(item.key(),
                                          parse_projector(item.value(), item.key()));
        }
    }
    if (root.contains("contexts")) {
        if (!root.at("contexts").is_object()) throw SceneError("contexts must be an object");
        for (const auto& item : root.at("contexts").items()) {
            const std::string where = "context '" + item.key() + "'";
            if (!item.value().is_array()) {
                throw SceneError(where + " must be an array of projector names");
            }
            std::vector<std::string> members;
            for (const auto& m : item.value()) {
                if (!m.is_string()) throw SceneError(where + ": member names must be strings");
                members.push_back(m.get<std::string>());
            }
            scene.contexts.emplace_back(item.key(), std::move(members));
        }
    }
    if (root.contains("queries")) {
        if (!root.at("queries").is_array()) throw SceneError("queries must be an array");
        for (std::size_t i = 0; i < root.at("queries").size(); ++i) {
            scene.queries.push_back(parse_query(root.at("queries")[i], i));
        }
    }
    return scene;
}

RawScene load_scene_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SceneError("cannot open scene file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_scene_text(buffer.str());
}

const StateVector* CompiledScene::find_state(const std::string& name) const {
    for (const auto& [n, s] : states) {
        if (n == name) return &s;
    }
    return nullptr;
}

const Subspace* CompiledScene::find_projector(const std::string& name) const {
    for (const auto& [n, p] : projectors) {
        if (n == name) return &p;
    }
    return nullptr;
}

const Context* CompiledScene::find_context(const std::string& name) const {
    for (const auto& [n, c] : contexts) {
        if (n == name) return &c;
    }
    return nullptr;
}

SubspaceTable CompiledScene::projector_table() const {
    SubspaceTable table;
    for (const auto& [n, p] : projectors) table.emplace(n, p);
    return table;
}

SceneCheck compile_scene(const RawScene& raw, Tolerance tol) {
    SceneCheck check;
    CompiledScene scene;
    scene.dimension = raw.dimension;
    scene.tol = tol;

    auto issue = [&check](std::string kind, std::string subject, std::string detail,
                          Real residual = 0.0, bool has_residual = false) {
        check.issues.push_back({std::move(kind), std::move(subject), std::move(detail),
                                residual, has_residual});
    };

    for (const auto& [name, amplitudes] : raw.states) {
        if (amplitudes.size() != raw.dimension) {
            issue("state", name,
                  "has " + std::to_string(amplitudes.size()) + " amplitudes, scene "
                  "dimension is " + std::to_string(raw.dimension));
            continue;
        }
        const Real norm_residual = std::abs(amplitudes.norm() - 1.0);
        if (norm_residual > tol.eps) {
            issue("state", name, "is not unit norm", norm_residual, true);
            continue;
        }
        scene.states.emplace_back(name, StateVector(amplitudes, tol));
    }

    // A projector may be declared on any square dimension: context members
    // and expression leaves must match the scene dimension, but resolve
    // factors and companions live on the tensor factors of it.
    for (const auto& [name, rawp] : raw.projectors) {
        try {
            Matrix q;
            switch (rawp.form) {
                case RawProjector::Form::MatrixForm:
                    q = rawp.matrix;
                    if (q.rows() != q.cols()) {
                        issue("projector", name, "matrix is not square");
                        continue;
                    }
                    break;
                case RawProjector::Form::BasisForm: {
                    bool sized = !rawp.basis.empty();
                    for (const Vector& v : rawp.basis) {
                        if (v.size() != rawp.basis.front().size()) sized = false;
                    }
                    if (!sized) {
                        issue("projector", name, "basis vectors must share one "
                                                 "nonzero length");
                        continue;
                    }
                    q = Subspace::from_vectors(rawp.basis.front().size(), rawp.basis,
                                               tol)
                            .matrix();
                    break;
                }
                case RawProjector::Form::AxisForm: {
                    const Real axis_norm = rawp.axis.norm();
                    if (std::abs(axis_norm - 1.0) > tol.eps) {
                        issue("projector", name, "axis is not a unit vector",
                              std::abs(axis_norm - 1.0), true);
                        continue;
                    }
                    q = spin_projector(Axis(rawp.axis, tol), rawp.sign, tol).matrix();
                    break;
                }
            }

            const Real herm = (q - q.adjoint()).norm();
            if (herm > tol.eps) {
                issue("projector", name, "is not Hermitian", herm, true);
                continue;
            }
            const Real idem = (q * q - q).norm();
            if (idem > tol.eps) {
                issue("projector", name, "is not idempotent", idem, true);
                continue;
            }
            scene.projectors.emplace_back(name, Subspace(Projector(std::move(q), tol)));
        } catch (const std::exception& e) {
            issue("projector", name, e.what());
        }
    }

    for (const auto& [name, member_names] : raw.contexts) {
        Context c;
        c.name = name;
        bool resolved = true;
        for (const std::string& member : member_names) {
            const Subspace* p = scene.find_projector(member);
            if (p == nullptr) {
                issue("context", name, "references unknown projector '" + member + "'");
                resolved = false;
                continue;
            }
            if (p->dim() != raw.dimension) {
                issue("context", name, "member '" + member + "' does not live on "
                                       "the scene dimension");
                resolved = false;
                continue;
            }
            c.members.push_back(p->projector());
        }
        if (!resolved) continue;

        const ContextReport report = validate_context(c, tol);
        for (const ContextIssue& ci : report.issues) {
            std::string detail = ci.check + ": " + ci.detail;
            if (ci.i >= 0) {
                detail += " (member " + std::to_string(ci.i);
                if (ci.j >= 0) detail += ", " + std::to_string(ci.j);
                detail += ")";
            }
            issue("context", name, detail, ci.residual, ci.check == "orthogonal" ||
                                                            ci.check == "sum");
        }
        if (report.ok()) scene.contexts.emplace_back(name, std::move(c));
    }

    // Duplicate names within a kind are caught at parse time (duplicate JSON
    // keys); cross-checking referenced names in queries happens at eval time
    // so that check output stays focused on the declarations.
    scene.queries = raw.queries;

    if (check.issues.empty()) check.scene = std::move(scene);
    return check;
}

// ---------------------------------------------------------------------------
// Expression parsing
// ---------------------------------------------------------------------------

namespace {

struct ExprParser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }

    bool at_end() {
        skip_space();
        return pos >= text.size();
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    static bool is_atom_char(char c) {
        return c != '!' && c != '&' && c != '|' && c != '(' && c != ')' &&
               !std::isspace(static_cast<unsigned char>(c));
    }

    PropExpr parse_or() {
        PropExpr lhs = parse_and();
        while (peek() == '|') {
            ++pos;
            lhs = PropExpr::disjunction(std::move(lhs), parse_and());
        }
        return lhs;
    }

    PropExpr parse_and() {
        PropExpr lhs = parse_not();
        while (peek() == '&') {
            ++pos;
            lhs = PropExpr::conjunction(std::move(lhs), parse_not());
        }
        return lhs;
    }

    PropExpr parse_not() {
        if (peek() == '!') {
            ++pos;
            return PropExpr::negation(parse_not());
        }
        return parse_primary();
    }

    PropExpr parse_primary() {
        const char c = peek();
        if (c == '(') {
            ++pos;
            PropExpr inner = parse_or();
            if (peek() != ')') {
                throw std::invalid_argument("expression: missing ')'");
            }
            ++pos;
            return inner;
        }
        if (c == '\0' || !is_atom_char(c)) {
            throw std::invalid_argument("expression: expected an atom at position " +
                                        std::to_string(pos));
        }
        std::string name;
        while (pos < text.size() && is_atom_char(text[pos])) {
            name.push_back(text[pos++]);
        }
        return PropExpr::atom(std::move(name));
    }
};

}  // namespace

PropExpr parse_expr(const std::string& text) {
    ExprParser parser{text};
    PropExpr expr = parser.parse_or();
    if (!parser.at_end()) {
        throw std::invalid_argument("expression: trailing input at position " +
                                    std::to_string(parser.pos));
    }
    return expr;
}

Axis parse_axis(const std::string& text) {
    if (text == "x") return Axis::x();
    if (text == "y") return Axis::y();
    if (text == "z") return Axis::z();

    std::istringstream in(text);
    Eigen::Vector3d v;
    char comma1 = 0;
    char comma2 = 0;
    if (in >> v(0) >> comma1 >> v(1) >> comma2 >> v(2) && comma1 == ',' &&
        comma2 == ',') {
        std::string rest;
        if (!(in >> rest)) return Axis(v);
    }
    throw std::invalid_argument("axis must be x, y, z or a comma-separated triple");
}

}  // namespace qprop
