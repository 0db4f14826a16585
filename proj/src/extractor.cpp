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

#include <algorithm>
#include <map>

#include "strucheck/cpp_extractor.hpp"

namespace strucheck {

namespace {

std::string access_symbol(Access access) { return std::string(access_name(access)); }

void emit_class(FactBase& fb, const ClassDecl& decl) {
    EntityId cls = fb.intern(Kind::Class, decl.name, decl.loc);
    fb.assert_fact("class", {cls});

    for (const BaseSpecifier& base : decl.bases) {
        EntityId b = fb.intern(Kind::Class, base.name);
        fb.assert_fact("direct_base_of", {b, cls});
        fb.assert_fact("base_access", {b, cls, fb.intern(Kind::Symbol, access_symbol(base.access))});
        if (base.is_virtual) fb.assert_fact("virtual_base_of", {b, cls});
    }

    for (const FunctionDecl& fn : decl.functions) {
        std::string sig = fn.signature();
        EntityId f = fb.intern(Kind::Function, decl.name + "::" + fn.name + sig, fn.loc);
        fb.assert_fact("declares_member_function", {cls, f});
        fb.assert_fact("function_name", {f, fb.intern(Kind::Symbol, fn.name)});
        fb.assert_fact("signature", {f, fb.intern(Kind::Symbol, sig)});
        if (fn.is_virtual) fb.assert_fact("virtual_kw", {f});
        if (fn.is_pure) fb.assert_fact("pure_virtual", {f});
        if (fn.is_destructor) fb.assert_fact("destructor", {f});
        if (fn.is_constructor) fb.assert_fact("constructor", {f});
    }

    for (const DataMemberDecl& dm : decl.data_members) {
        EntityId m = fb.intern(Kind::DataMember, decl.name + "::" + dm.name, dm.loc);
        fb.assert_fact("data_member", {cls, m});
        fb.assert_fact("member_access", {cls, m, fb.intern(Kind::Symbol, access_symbol(dm.access))});
    }
}

[[noreturn]] void duplicate_class(const ClassDecl& first, const ClassDecl& second) {
    const SourceLoc& f = first.loc;
    throw Error(ErrorCode::DuplicateClass,
                "class '" + second.name + "' redefined with a different body (first defined at " + f.file + ':' +
                    std::to_string(f.line) + ':' + std::to_string(f.column) + ")",
                second.loc, {second.name});
}

// Keeps the first definition of each class, rejecting conflicting ones.
void register_definitions(std::map<std::string, const ClassDecl*>& defined, const std::vector<ClassDecl>& decls) {
    for (const ClassDecl& d : decls) {
        auto [it, inserted] = defined.emplace(d.name, &d);
        if (!inserted && !it->second->same_definition(d)) duplicate_class(*it->second, d);
    }
}

// Cycle in the derived -> base graph, rotated to start at its smallest name.
std::vector<std::string> find_inheritance_cycle(const FactBase& fb) {
    std::map<std::string, std::vector<std::string>> bases_of;
    for (const Tuple& t : fb.extension("direct_base_of")) {
        bases_of[fb.entity(t[1]).qualified_name].push_back(fb.entity(t[0]).qualified_name);
        bases_of.try_emplace(fb.entity(t[0]).qualified_name);
    }
    for (auto& [name, bases] : bases_of) std::sort(bases.begin(), bases.end());

    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark> mark;
    std::vector<std::string> path;
    std::vector<std::string> cycle;

    std::function<bool(const std::string&)> visit = [&](const std::string& node) {
        mark[node] = Mark::Grey;
        path.push_back(node);
        for (const std::string& next : bases_of[node]) {
            Mark m = mark[next];
            if (m == Mark::Grey) {
                auto start = std::find(path.begin(), path.end(), next);
                cycle.assign(start, path.end());
                return true;
            }
            if (m == Mark::White && visit(next)) return true;
        }
        path.pop_back();
        mark[node] = Mark::Black;
        return false;
    };

    for (const auto& [name, bases] : bases_of) {
        if (mark[name] == Mark::White && visit(name)) break;
    }
    if (!cycle.empty()) {
        auto smallest = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), smallest, cycle.end());
    }
    return cycle;
}

}  // namespace

FactBase extract(const std::vector<ClassDecl>& decls, std::string_view file) {
    (void)file;
    std::map<std::string, const ClassDecl*> defined;
    register_definitions(defined, decls);

    FactBase fb;
    // Definitions first so that a base named before its definition still
    // receives the definition's location.
    for (const auto& [name, decl] : defined) fb.intern(Kind::Class, name, decl->loc);
    for (const auto& [name, decl] : defined) emit_class(fb, *decl);
    return fb;
}

FactBase extract_project(const std::vector<SourceFile>& files, const DiagnosticSink& warn) {
    std::vector<std::vector<ClassDecl>> parsed;
    parsed.reserve(files.size());
    for (const SourceFile& f : files) parsed.push_back(parse(tokenize(f.text, f.name), warn));

    std::map<std::string, const ClassDecl*> defined;
    for (const auto& decls : parsed) register_definitions(defined, decls);

    for (const auto& decls : parsed) {
        for (const ClassDecl& d : decls) {
            for (const BaseSpecifier& b : d.bases) {
                if (!defined.contains(b.name)) {
                    throw Error(ErrorCode::UnresolvedBase,
                                "base class '" + b.name + "' of '" + d.name + "' is never defined", b.loc, {b.name});
                }
            }
        }
    }

    FactBase fb;
    for (std::size_t i = 0; i < files.size(); ++i) fb.merge(extract(parsed[i], files[i].name));

    if (auto cycle = find_inheritance_cycle(fb); !cycle.empty()) {
        std::string text;
        for (const auto& c : cycle) text += c + " -> ";
        text += cycle.front();
        const ClassDecl* first = defined.at(cycle.front());
        throw Error(ErrorCode::InheritanceCycle, "inheritance cycle: " + text, first->loc, cycle);
    }
    fb.freeze();
    return fb;
}

}  // namespace strucheck
