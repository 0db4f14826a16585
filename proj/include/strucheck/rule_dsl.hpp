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

#ifndef STRUCHECK_RULE_DSL_HPP
#define STRUCHECK_RULE_DSL_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "strucheck/datalog.hpp"

namespace strucheck {

/// Argument sorts of every predicate a rule may mention.
using Signatures = std::map<std::string, std::vector<Kind>, std::less<>>;

/// Sorts of the base schema.
Signatures base_signatures();

struct DslTerm {
    enum class Form { Var, Symbol, Quoted } form;
    std::string text;

    friend bool operator==(const DslTerm&, const DslTerm&) = default;
};

struct AtomCondition {
    bool negated = false;
    std::string predicate;
    std::vector<DslTerm> args;

    friend bool operator==(const AtomCondition&, const AtomCondition&) = default;
};

struct DisequalityCondition {
    std::string var;
    DslTerm rhs;

    friend bool operator==(const DisequalityCondition&, const DisequalityCondition&) = default;
};

using Condition = std::variant<AtomCondition, DisequalityCondition>;

struct Binding {
    std::string var;
    Kind domain;

    friend bool operator==(const Binding&, const Binding&) = default;
};

struct RuleAst {
    std::string name;
    std::optional<std::string> title;
    std::vector<Binding> bindings;
    std::vector<Condition> conditions;
    std::string message;
    SourceLoc loc;

    /// Structural equality; locations are ignored.
    bool same_as(const RuleAst& other) const;
};

struct ClosureDef {
    std::string name;
    std::string base;
    SourceLoc loc;
};

struct Ruleset {
    std::vector<ClosureDef> closures;
    std::vector<RuleAst> rules;

    bool same_as(const Ruleset& other) const;
};

/// Parses rule text. `known` gives the sorts used to tell symbols from
/// variables: a bare identifier not bound by `forall` is a symbol only in a
/// symbol-sorted position. Throws DslSyntaxError, DuplicateRuleName,
/// DuplicateRelation and UnboundVariable.
Ruleset parse_ruleset(std::string_view text, const Signatures& known, std::string_view file = "<rules>");

/// Renders a ruleset back to rule text that parses to the same AST.
std::string print_ruleset(const Ruleset& ruleset);

/// A named coding rule and the clause deriving its violations.
struct RuleSpec {
    std::string id;
    std::string title;
    std::string message;
    std::vector<std::string> variables;  // witness order, names as used in `message`
    std::string head_predicate;          // violate_<id>
    std::vector<Clause> clauses;
    /// Witness positions whose swap yields the same violation, if any.
    std::optional<std::pair<std::size_t, std::size_t>> symmetric;
};

struct CompiledRules {
    Program program;  // closure clauses followed by one violation clause per rule
    std::vector<RuleSpec> rules;
};

/// Compiles to clauses. `context` holds already-defined derived predicates
/// (the prelude); a closure re-defining one of them with identical clauses is
/// accepted and emits nothing. `known` must cover base and context predicates.
/// Throws UnknownPredicateInRule, ArityMismatchInRule, SortMismatch,
/// DuplicateRelation, UnsafeVariable and CyclicNegation.
CompiledRules compile(const Ruleset& ruleset, const Program& context, const Signatures& known);

/// Two clauses defining the transitive (non-reflexive) closure of `base`.
std::vector<Clause> closure_clauses(const std::string& name, const std::string& base);

/// Replaces `{var}` holes with names from `witness`; `{{` and `}}` are literal
/// braces. Throws UnknownHole.
std::string format_message(std::string_view message, const std::map<std::string, std::string>& witness);

/// Names of the holes in a message template, in order of appearance.
std::vector<std::string> message_holes(std::string_view message);

}  // namespace strucheck

#endif  // STRUCHECK_RULE_DSL_HPP
