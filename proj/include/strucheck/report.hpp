/* Copyright 2026 The strucheck Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef STRUCHECK_REPORT_HPP
#define STRUCHECK_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "strucheck/datalog.hpp"
#include "strucheck/rule_dsl.hpp"

namespace strucheck {

struct WitnessBinding {
    std::string var;
    std::string name;  // qualified name of the bound entity
    std::optional<SourceLoc> loc;
};

/// One infringement: a rule and the substitution that demonstrates it. The
/// first binding's entity is the primary location.
struct Violation {
    std::string rule_id;
    std::string message;
    std::vector<WitnessBinding> witness;

    const std::optional<SourceLoc>& primary_loc() const { return witness.front().loc; }
};

/// Reads every rule's violation predicate from an evaluated model. With
/// `dedup_symmetric`, a witness whose symmetric twin is also present is
/// reported once (the twin with the smaller names is kept).
std::vector<Violation> collect_violations(const Model& model, const std::vector<RuleSpec>& rules,
                                          bool dedup_symmetric = false);

/// Orders by (file, line, rule id, witness names).
void sort_violations(std::vector<Violation>& violations);

/// `<file>:<line>:<col>: violation[<rule>]: <message>` then one indented
/// `where <var> = <name>` line per binding. `-:0:0` for unknown locations.
std::string render_text(const std::vector<Violation>& violations);

/// Versioned JSON document with fixed key order.
std::string render_json(const std::vector<Violation>& violations, const std::vector<std::string>& rules_checked);

}  // namespace strucheck

#endif  // STRUCHECK_REPORT_HPP
