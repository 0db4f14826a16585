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

#include "strucheck/rule_catalog.hpp"

#include <set>

namespace strucheck {

namespace {

Term v(const char* name) { return Term::var(name); }

Literal pos(std::string predicate, std::vector<Term> args) { return Literal{std::move(predicate), std::move(args), false}; }
Literal neg(std::string predicate, std::vector<Term> args) { return Literal{std::move(predicate), std::move(args), true}; }

// Same name and signature, G declared in a base class of F's class.
std::vector<BodyItem> same_member_in_base() {
    return {
        pos("declares_member_function", {v("C"), v("F")}),
        pos("declares_member_function", {v("B"), v("G")}),
        pos("base_of", {v("B"), v("C")}),
        pos("function_name", {v("F"), v("N")}),
        pos("function_name", {v("G"), v("N")}),
        pos("signature", {v("F"), v("S")}),
        pos("signature", {v("G"), v("S")}),
    };
}

Clause with_tail(Literal head, std::vector<BodyItem> body, BodyItem tail) {
    body.push_back(std::move(tail));
    return Clause{std::move(head), std::move(body)};
}

CatalogEntry builtin(RuleSpec spec) {
    CatalogEntry entry;
    entry.id = spec.id;
    entry.source = RuleSource::Builtin;
    entry.spec = std::move(spec);
    return entry;
}

}  // namespace

Program prelude() {
    Program p;
    for (Clause& c : closure_clauses("base_of", "direct_base_of")) p.add(std::move(c));
    p.add(Clause{pos("is_function", {v("F")}), {pos("declares_member_function", {v("C"), v("F")})}});
    p.add(Clause{pos("is_data_member", {v("M")}), {pos("data_member", {v("C"), v("M")})}});
    p.add(Clause{pos("is_virtual", {v("F")}), {pos("virtual_kw", {v("F")})}});
    p.add(with_tail(pos("is_virtual", {v("F")}), same_member_in_base(), pos("is_virtual", {v("G")})));
    p.add(Clause{pos("is_virtual", {v("F")}),
                 {
                     pos("declares_member_function", {v("C"), v("F")}),
                     pos("destructor", {v("F")}),
                     pos("declares_member_function", {v("B"), v("G")}),
                     pos("destructor", {v("G")}),
                     pos("base_of", {v("B"), v("C")}),
                     pos("is_virtual", {v("G")}),
                 }});
    p.add(with_tail(pos("overrides", {v("F"), v("G")}), same_member_in_base(), pos("is_virtual", {v("G")})));
    p.add(with_tail(pos("redefines", {v("F"), v("G")}), same_member_in_base(), neg("is_virtual", {v("G")})));
    return p;
}

Signatures catalog_signatures() {
    Signatures s = base_signatures();
    s.emplace("base_of", std::vector<Kind>{Kind::Class, Kind::Class});
    s.emplace("is_function", std::vector<Kind>{Kind::Function});
    s.emplace("is_data_member", std::vector<Kind>{Kind::DataMember});
    s.emplace("is_virtual", std::vector<Kind>{Kind::Function});
    s.emplace("overrides", std::vector<Kind>{Kind::Function, Kind::Function});
    s.emplace("redefines", std::vector<Kind>{Kind::Function, Kind::Function});
    return s;
}

std::vector<CatalogEntry> builtin_rules() {
    std::vector<CatalogEntry> out;

    {
        RuleSpec r;
        r.id = "hicpp_3_3_15";
        r.title = "ensure base classes common to more than one derived class are virtual";
        r.message = "base class {A} of {C} must be virtual (diamond via {B} and {C} to {D})";
        r.variables = {"A", "B", "C", "D"};
        r.head_predicate = "violate_hicpp_3_3_15";
        r.symmetric = std::make_pair(std::size_t{1}, std::size_t{2});
        r.clauses.push_back(Clause{
            pos(r.head_predicate, {v("A"), v("B"), v("C"), v("D")}),
            {
                pos("class", {v("A")}),
                pos("class", {v("B")}),
                pos("class", {v("C")}),
                pos("class", {v("D")}),
                Disequality{v("B"), v("C")},
                pos("direct_base_of", {v("A"), v("B")}),
                pos("direct_base_of", {v("A"), v("C")}),
                pos("base_of", {v("B"), v("D")}),
                pos("base_of", {v("C"), v("D")}),
                neg("virtual_base_of", {v("A"), v("C")}),
            }});
        out.push_back(builtin(std::move(r)));
    }
    {
        // Only declared destructors are seen; an implicit one produces no facts.
        RuleSpec r;
        r.id = "virtual_dtor_in_base";
        r.title = "a class with derived classes must declare a virtual destructor";
        r.message = "class {B} has derived classes but its destructor {F} is not virtual";
        r.variables = {"B", "F"};
        r.head_predicate = "violate_virtual_dtor_in_base";
        r.clauses.push_back(Clause{
            pos(r.head_predicate, {v("B"), v("F")}),
            {
                pos("class", {v("B")}),
                pos("is_function", {v("F")}),
                pos("base_of", {v("B"), v("D")}),
                pos("declares_member_function", {v("B"), v("F")}),
                pos("destructor", {v("F")}),
                neg("is_virtual", {v("F")}),
            }});
        out.push_back(builtin(std::move(r)));
    }
    {
        RuleSpec r;
        r.id = "no_public_data_member";
        r.title = "data members must not be public";
        r.message = "data member {M} of class {C} is public";
        r.variables = {"C", "M"};
        r.head_predicate = "violate_no_public_data_member";
        r.clauses.push_back(Clause{
            pos(r.head_predicate, {v("C"), v("M")}),
            {
                pos("class", {v("C")}),
                pos("is_data_member", {v("M")}),
                pos("data_member", {v("C"), v("M")}),
                pos("member_access", {v("C"), v("M"), Term::constant(Kind::Symbol, "public")}),
            }});
        out.push_back(builtin(std::move(r)));
    }
    {
        RuleSpec r;
        r.id = "no_redefine_nonvirtual";
        r.title = "do not redefine an inherited non-virtual function";
        r.message = "{F} redefines non-virtual function {G} of a base class";
        r.variables = {"F", "G"};
        r.head_predicate = "violate_no_redefine_nonvirtual";
        r.clauses.push_back(Clause{
            pos(r.head_predicate, {v("F"), v("G")}),
            {
                pos("is_function", {v("F")}),
                pos("is_function", {v("G")}),
                pos("redefines", {v("F"), v("G")}),
            }});
        out.push_back(builtin(std::move(r)));
    }
    return out;
}

AssembledProgram assemble(const std::vector<CatalogEntry>& catalog, const std::vector<Ruleset>& user_rulesets) {
    AssembledProgram out;
    out.program = prelude();
    std::set<std::string> ids;
    for (const CatalogEntry& e : catalog) {
        if (!e.enabled) continue;
        if (!ids.insert(e.id).second) throw Error(ErrorCode::DuplicateRuleId, "rule id '" + e.id + "' used twice", std::nullopt, {e.id});
        for (const Clause& c : e.spec.clauses) out.program.add(c);
        out.rules.push_back(e.spec);
    }

    Signatures known = catalog_signatures();
    for (const Ruleset& rs : user_rulesets) {
        for (const RuleAst& rule : rs.rules) {
            if (!ids.insert(rule.name).second) {
                throw Error(ErrorCode::DuplicateRuleId, "rule id '" + rule.name + "' is already in use", rule.loc,
                            {rule.name});
            }
        }
        CompiledRules compiled = compile(rs, out.program, known);
        for (const ClosureDef& c : rs.closures) {
            if (auto base = known.find(c.base); base != known.end()) known.try_emplace(c.name, base->second);
        }
        out.program.append(compiled.program);
        for (RuleSpec& spec : compiled.rules) out.rules.push_back(std::move(spec));
    }

    validate(out.program);
    out.strata = stratify(out.program);
    return out;
}

}  // namespace strucheck
