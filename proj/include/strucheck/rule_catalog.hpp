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

#ifndef STRUCHECK_RULE_CATALOG_HPP
#define STRUCHECK_RULE_CATALOG_HPP

#include <string>
#include <vector>

#include "strucheck/rule_dsl.hpp"

namespace strucheck {

/// Derived structural relations every rule can use:
///   base_of/2          transitive, non-reflexive closure of direct_base_of
///   is_function/1      functions declared by some class
///   is_data_member/1   data members of some class
///   is_virtual/1       declared virtual, or overriding a virtual function of a
///                      base (same name and signature; any destructor of a
///                      class with a virtual base destructor)
///   overrides/2        F overrides virtual G of a base class
///   redefines/2        F hides non-virtual G of a base class
Program prelude();

/// Sorts of the base schema and of the prelude relations.
Signatures catalog_signatures();

enum class RuleSource { Builtin, DslFile };

struct CatalogEntry {
    std::string id;
    RuleSource source = RuleSource::Builtin;
    RuleSpec spec;
    bool enabled = true;
};

/// hicpp_3_3_15, virtual_dtor_in_base, no_public_data_member and
/// no_redefine_nonvirtual, all enabled.
std::vector<CatalogEntry> builtin_rules();

struct AssembledProgram {
    Program program;              // prelude, enabled builtins, user clauses
    std::vector<RuleSpec> rules;  // enabled rules in catalog order, then user rules
    Stratification strata;
};

/// Compiles the user rulesets against the prelude and joins everything into a
/// single safety-checked, stratified program. Throws DuplicateRuleId when a
/// user rule collides with an enabled builtin or another user rule.
AssembledProgram assemble(const std::vector<CatalogEntry>& catalog, const std::vector<Ruleset>& user_rulesets);

}  // namespace strucheck

#endif  // STRUCHECK_RULE_CATALOG_HPP
