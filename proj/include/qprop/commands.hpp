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

#include "qprop/scene.hpp"

#include <iosfwd>
#include <string>

namespace qprop {

// Exit-code contract: 0 all pass, 1 semantic failure, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitInput = 2;

enum class ReportFormat { Table, Json };

/// Validates states, projectors and contexts of a scene file; prints one
/// line per failure with its residual.
int cmd_check(const std::string& path, Tolerance tol, std::ostream& out,
              std::ostream& err);

/// Answers every query of the scene, one record per query in input order.
int cmd_eval(const std::string& path, ReportFormat format, Tolerance tol,
             std::ostream& out, std::ostream& err);

/// Lists the generated lattice of a named context with ranks and generator
/// subsets, plus the Boolean-law summary.
int cmd_lattice(const std::string& path, const std::string& context_name,
                Tolerance tol, std::ostream& out, std::ostream& err);

struct DemoOptions {
    std::string u_prime = "x";
    std::string u_double_prime = "z";
    int n_env = 1;
};

/// Runs the qubit (x) environment demonstration.
int cmd_demo(const DemoOptions& options, ReportFormat format, Tolerance tol,
             std::ostream& out, std::ostream& err);

/// Full command-line surface; main() delegates here.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qprop
