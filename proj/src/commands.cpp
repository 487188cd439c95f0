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

#include "qprop/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace qprop {

namespace {

using Json = nlohmann::ordered_json;

std::string format_real(Real x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return buffer;
}

struct QueryRecord {
    Json echo;
    std::string result;     // TRUE | FALSE | INDEFINITE, empty on error
    std::string value_set;  // set by a resolve request
    std::optional<ProbabilityReport> probabilities;
    std::vector<std::string> warnings;
    std::string error;
};

Json to_json(const QueryRecord& r) {
    Json j;
    j["query"] = r.echo;
    if (!r.error.empty()) {
        j["error"] = r.error;
    } else {
        j["result"] = r.result;
        if (!r.value_set.empty()) j["value_set"] = r.value_set;
        if (r.probabilities) {
            Json p;
            p["pr_e1"] = r.probabilities->pr_e1;
            p["pr_e2"] = r.probabilities->pr_e2;
            p["method"] = to_string(r.probabilities->method);
            p["sum_rule_residual"] = r.probabilities->sum_rule_residual;
            if (!r.probabilities->note.empty()) p["note"] = r.probabilities->note;
            j["probabilities"] = p;
        }
    }
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

ContextSet collect_contexts(const CompiledScene& scene, const Query& query) {
    ContextSet set;
    for (const std::string& name : query.contexts) {
        const Context* c = scene.find_context(name);
        if (c == nullptr) {
            throw std::invalid_argument("unknown context '" + name + "'");
        }
        set.contexts.push_back(*c);
    }
    return set;
}

QueryRecord evaluate_query(const CompiledScene& scene, const Query& query,
                           std::size_t index) {
    QueryRecord record;
    record.echo["index"] = index;
    record.echo["semantics"] = query.semantics;
    record.echo["expression"] = query.expression;
    record.echo["state"] = query.state;
    record.echo["contexts"] = query.contexts;

    try {
        const StateVector* state = scene.find_state(query.state);
        if (state == nullptr) {
            throw std::invalid_argument("unknown state '" + query.state + "'");
        }
        const PropExpr expr = parse_expr(query.expression);
        const SubspaceTable table = scene.projector_table();

        if (query.semantics == "hilbert") {
            record.result = to_string(
                evaluate_hilbert(denote(expr, table, scene.tol), *state, scene.tol));
        } else if (query.semantics == "admissible") {
            if (expr.kind != PropExpr::Kind::Atom) {
                throw std::invalid_argument(
                    "admissible semantics takes a single projector name");
            }
            const Subspace* p = scene.find_projector(expr.name);
            if (p == nullptr) {
                throw std::invalid_argument("unknown projector '" + expr.name + "'");
            }
            const ContextSet set = collect_contexts(scene, query);
            const AdmissibilityReport report = evaluate_admissible_report(
                p->projector(), *state, set, scene.tol);
            record.result = to_string(report.value);
            record.warnings = report.warnings;
        } else if (query.semantics == "superval") {
            const ContextSet set = collect_contexts(scene, query);
            record.result = to_string(
                evaluate_supervaluation(expr, *state, set, table, scene.tol));
        } else {
            throw std::invalid_argument("unknown semantics selector '" +
                                        query.semantics + "'");
        }

        if (query.resolve) {
            const ResolveRequest& req = *query.resolve;
            const Subspace* factor = scene.find_projector(req.factor);
            const Subspace* companion = scene.find_projector(req.companion);
            const Context* context = scene.find_context(req.context);
            if (factor == nullptr || companion == nullptr) {
                throw std::invalid_argument("resolve: unknown projector name");
            }
            if (context == nullptr) {
                throw std::invalid_argument("resolve: unknown context '" +
                                            req.context + "'");
            }
            record.value_set =
                to_string(resolve_gap(*factor, *companion, *state, *context, scene.tol));
            if (req.complement) {
                const Subspace* minus = scene.find_projector(*req.complement);
                if (minus == nullptr) {
                    throw std::invalid_argument("resolve: unknown projector '" +
                                                *req.complement + "'");
                }
                record.probabilities = assign_probabilities(*state, *factor, *minus,
                                                            *context, scene.tol);
            }
        }
    } catch (const std::exception& e) {
        record.error = e.what();
    }
    return record;
}

void print_issues(const std::vector<SceneIssue>& issues, std::ostream& out) {
    for (const SceneIssue& issue : issues) {
        out << "FAIL " << issue.kind << " '" << issue.subject << "': " << issue.detail;
        if (issue.has_residual) out << " (residual " << format_real(issue.residual) << ")";
        out << "\n";
    }
}

void print_record_table(const std::vector<QueryRecord>& records, std::ostream& out) {
    if (records.empty()) return;

    std::vector<std::array<std::string, 5>> rows;
    rows.push_back({"#", "semantics", "state", "expression", "result"});
    for (const QueryRecord& r : records) {
        std::string result = !r.error.empty() ? "ERROR: " + r.error : r.result;
        if (!r.value_set.empty()) result += "  gap -> " + r.value_set;
        if (r.probabilities) {
            result += "  Pr = " + format_real(r.probabilities->pr_e1) + "/" +
                      format_real(r.probabilities->pr_e2) + " (" +
                      to_string(r.probabilities->method) + ")";
        }
        for (const std::string& w : r.warnings) result += "  [" + w + "]";
        rows.push_back({r.echo["index"].dump(), r.echo["semantics"].get<std::string>(),
                        r.echo["state"].get<std::string>(),
                        r.echo["expression"].get<std::string>(), result});
    }

    std::array<std::size_t, 5> width{};
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) {
                out << std::string(width[c] - row[c].size() + 2, ' ');
            }
        }
        out << "\n";
    }
}

int load_and_compile(const std::string& path, Tolerance tol, std::ostream& out,
                     std::ostream& err, std::optional<CompiledScene>& scene) {
    RawScene raw;
    try {
        raw = load_scene_file(path);
    } catch (const SceneError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    SceneCheck check = compile_scene(raw, tol);
    if (!check.ok()) {
        print_issues(check.issues, out);
        return kExitSemantic;
    }
    scene = std::move(check.scene);
    return kExitOk;
}

}  // namespace

int cmd_check(const std::string& path, Tolerance tol, std::ostream& out,
              std::ostream& err) {
    std::optional<CompiledScene> scene;
    const int code = load_and_compile(path, tol, out, err, scene);
    if (code == kExitOk) {
        out << "scene OK: dimension " << scene->dimension << ", "
            << scene->states.size() << " state(s), " << scene->projectors.size()
            << " projector(s), " << scene->contexts.size() << " context(s), "
            << scene->queries.size() << " query(ies)\n";
    } else if (code == kExitSemantic) {
        out << "scene check failed\n";
    }
    return code;
}

int cmd_eval(const std::string& path, ReportFormat format, Tolerance tol,
             std::ostream& out, std::ostream& err) {
    std::optional<CompiledScene> scene;
    const int code = load_and_compile(path, tol, out, err, scene);
    if (code != kExitOk) return code;

    std::vector<QueryRecord> records;
    records.reserve(scene->queries.size());
    for (std::size_t i = 0; i < scene->queries.size(); ++i) {
        records.push_back(evaluate_query(*scene, scene->queries[i], i));
    }

    if (format == ReportFormat::Json) {
        for (const QueryRecord& r : records) {
            out << to_json(r).dump() << "\n";
        }
    } else {
        print_record_table(records, out);
    }

    const bool failed = std::any_of(records.begin(), records.end(),
                                    [](const QueryRecord& r) { return !r.error.empty(); });
    return failed ? kExitSemantic : kExitOk;
}

int cmd_lattice(const std::string& path, const std::string& context_name,
                Tolerance tol, std::ostream& out, std::ostream& err) {
    std::optional<CompiledScene> scene;
    const int code = load_and_compile(path, tol, out, err, scene);
    if (code != kExitOk) return code;

    const Context* context = scene->find_context(context_name);
    if (context == nullptr) {
        err << "error: unknown context '" << context_name << "'\n";
        return kExitSemantic;
    }
    const std::size_t n = context->members.size();
    if (n > 12) {
        err << "error: context '" << context_name << "' has " << n
            << " members; the lattice listing is limited to 12\n";
        return kExitSemantic;
    }

    InvariantLattice lattice;
    try {
        lattice = generated_lattice(*context, tol);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    }

    out << "lattice of context '" << context_name << "': " << n << " generators, "
        << lattice.size() << " elements\n";
    for (std::size_t mask = 0; mask < lattice.size(); ++mask) {
        out << "elem " << std::setw(5) << mask << "  rank " << std::setw(3)
            << lattice.elements[mask].rank() << "  generators {";
        bool first = true;
        for (std::size_t bit = 0; bit < n; ++bit) {
            if (mask & (std::size_t(1) << bit)) {
                if (!first) out << ",";
                out << bit;
                first = false;
            }
        }
        out << "}\n";
    }

    if (n <= 4) {
        // Index every pairwise meet/join back into the element list; this
        // both verifies closure and feeds the exhaustive distributivity scan.
        const std::size_t count = lattice.size();
        std::vector<std::vector<std::size_t>> meet_idx(count,
                                                       std::vector<std::size_t>(count));
        std::vector<std::vector<std::size_t>> join_idx(count,
                                                       std::vector<std::size_t>(count));
        bool closed = true;
        for (std::size_t a = 0; a < count && closed; ++a) {
            for (std::size_t b = 0; b < count && closed; ++b) {
                const auto m = lattice.index_of(
                    meet(lattice.elements[a], lattice.elements[b], tol), tol);
                const auto j = lattice.index_of(
                    join(lattice.elements[a], lattice.elements[b], tol), tol);
                if (!m || !j) {
                    closed = false;
                    break;
                }
                meet_idx[a][b] = *m;
                join_idx[a][b] = *j;
            }
        }
        bool complemented = true;
        for (std::size_t a = 0; a < count && complemented; ++a) {
            complemented = lattice
                               .index_of(complement(lattice.elements[a], tol), tol)
                               .has_value();
        }
        bool distributive = closed;
        std::size_t triples = 0;
        if (closed) {
            for (std::size_t a = 0; a < count && distributive; ++a) {
                for (std::size_t b = 0; b < count && distributive; ++b) {
                    for (std::size_t c = 0; c < count; ++c) {
                        ++triples;
                        if (meet_idx[a][join_idx[b][c]] !=
                            join_idx[meet_idx[a][b]][meet_idx[a][c]]) {
                            distributive = false;
                            break;
                        }
                    }
                }
            }
        }
        out << "Boolean summary: closure " << (closed ? "PASS" : "FAIL")
            << ", complement " << (complemented ? "PASS" : "FAIL")
            << ", distributivity " << (distributive ? "PASS" : "FAIL") << " ("
            << triples << " triples)\n";
        if (!(closed && complemented && distributive)) return kExitSemantic;
    } else {
        out << "Boolean summary: skipped (more than 4 generators)\n";
    }
    return kExitOk;
}

int cmd_demo(const DemoOptions& options, ReportFormat format, Tolerance tol,
             std::ostream& out, std::ostream& err) {
    DemoReport report;
    ModelConfig cfg;
    try {
        cfg.u_prime = parse_axis(options.u_prime);
        cfg.u_double_prime = parse_axis(options.u_double_prime);
        cfg.n_env = options.n_env;
        report = run_two_state_demo(cfg, tol);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    }

    if (format == ReportFormat::Json) {
        Json j;
        j["config"] = {{"u_prime", options.u_prime},
                       {"u_double_prime", options.u_double_prime},
                       {"n_env", options.n_env}};
        Json states = Json::array();
        for (const DemoStateRecord& r : report.states) {
            Json s;
            s["state"] = r.state_label;
            s["conjunction_plus"] = to_string(r.conj_plus);
            s["conjunction_minus"] = to_string(r.conj_minus);
            s["lifted_companion"] = to_string(r.companion);
            s["gap_plus"] = to_string(r.gap_plus);
            s["gap_minus"] = to_string(r.gap_minus);
            s["exclusive"] = r.exclusive;
            s["exhaustive"] = r.exhaustive;
            s["pr_e1"] = r.probabilities.pr_e1;
            s["pr_e2"] = r.probabilities.pr_e2;
            s["method"] = to_string(r.probabilities.method);
            s["sum_rule_residual"] = r.probabilities.sum_rule_residual;
            states.push_back(std::move(s));
        }
        j["states"] = std::move(states);
        j["all_pass"] = report.all_pass;
        out << j.dump() << "\n";
    } else {
        out << "two-state demo: u' = " << options.u_prime << ", u'' = "
            << options.u_double_prime << ", environment qubits = " << options.n_env
            << "\n";
        for (const DemoStateRecord& r : report.states) {
            out << "state " << r.state_label << "\n";
            out << "  conjunction (u''+ with 1z+)   " << to_string(r.conj_plus) << "\n";
            out << "  conjunction (u''- with 1z+)   " << to_string(r.conj_minus) << "\n";
            out << "  lifted 1z+                    " << to_string(r.companion) << "\n";
            out << "  gap of u''+                   " << to_string(r.gap_plus) << "\n";
            out << "  gap of u''-                   " << to_string(r.gap_minus) << "\n";
            out << "  exclusive / exhaustive        " << (r.exclusive ? "yes" : "no")
                << " / " << (r.exhaustive ? "yes" : "no") << "\n";
            out << "  probabilities                 Pr[E1] = "
                << format_real(r.probabilities.pr_e1) << ", Pr[E2] = "
                << format_real(r.probabilities.pr_e2) << " ("
                << to_string(r.probabilities.method) << "), sum residual "
                << format_real(r.probabilities.sum_rule_residual) << "\n";
        }
        out << "result: " << (report.all_pass ? "PASS" : "FAIL") << "\n";
    }
    return report.all_pass ? kExitOk : kExitSemantic;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"valuation engine for quantum propositions"};
    app.require_subcommand(1);

    std::string check_path;
    std::string eval_path;
    std::string lattice_path;
    std::string lattice_context;
    std::string format = "table";
    double eps = Tolerance{}.eps;
    DemoOptions demo_options;

    auto add_eps = [&eps](CLI::App* cmd) {
        cmd->add_option("--eps", eps, "tolerance (default 1e-9)")
            ->envname("QPROP_EPS");
    };

    CLI::App* check = app.add_subcommand("check", "validate a scene file");
    check->add_option("file", check_path, "scene file")->required();
    add_eps(check);

    CLI::App* eval = app.add_subcommand("eval", "answer the queries of a scene file");
    eval->add_option("file", eval_path, "scene file")->required();
    eval->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"table", "json"}));
    add_eps(eval);

    CLI::App* lattice =
        app.add_subcommand("lattice", "list the generated lattice of a context");
    lattice->add_option("file", lattice_path, "scene file")->required();
    lattice->add_option("--context", lattice_context, "context name")->required();
    add_eps(lattice);

    CLI::App* demo = app.add_subcommand("demo", "run the qubit-environment model");
    demo->add_option("--u-prime", demo_options.u_prime, "system axis (x|y|z|a,b,c)");
    demo->add_option("--u-double-prime", demo_options.u_double_prime,
                     "pasted axis (x|y|z|a,b,c)");
    demo->add_option("--n-env", demo_options.n_env, "number of environment qubits")
        ->check(CLI::Range(1, 9));
    demo->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"table", "json"}));
    add_eps(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    Tolerance tol;
    try {
        tol = Tolerance(eps);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    const ReportFormat report_format =
        format == "json" ? ReportFormat::Json : ReportFormat::Table;

    try {
        if (check->parsed()) return cmd_check(check_path, tol, out, err);
        if (eval->parsed()) return cmd_eval(eval_path, report_format, tol, out, err);
        if (lattice->parsed()) {
            return cmd_lattice(lattice_path, lattice_context, tol, out, err);
        }
        if (demo->parsed()) return cmd_demo(demo_options, report_format, tol, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    err << "error: no command\n";
    return kExitInput;
}

}  // namespace qprop
