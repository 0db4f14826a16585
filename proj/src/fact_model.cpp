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

#include "strucheck/fact_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace strucheck {

namespace {

std::string intern_key(Kind kind, std::string_view name) {
    std::string key;
    key.reserve(name.size() + 2);
    key.push_back(static_cast<char>('0' + static_cast<int>(kind)));
    key.push_back(':');
    key.append(name);
    return key;
}

ArgSort sort(Kind kind) { return ArgSort{kind, {}}; }

ArgSort access_sort() { return ArgSort{Kind::Symbol, {"public", "protected", "private"}}; }

}  // namespace

std::string_view kind_name(Kind kind) {
    switch (kind) {
    case Kind::Class: return "class";
    case Kind::Function: return "function";
    case Kind::DataMember: return "data_member";
    case Kind::Symbol: return "symbol";
    }
    return "symbol";
}

std::optional<Kind> parse_kind(std::string_view name) {
    if (name == "class") return Kind::Class;
    if (name == "function") return Kind::Function;
    if (name == "data_member") return Kind::DataMember;
    if (name == "symbol") return Kind::Symbol;
    return std::nullopt;
}

Schema::Schema(std::vector<PredicateSchema> predicates) : predicates_(std::move(predicates)) {
    std::sort(predicates_.begin(), predicates_.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
}

const Schema& Schema::base() {
    static const Schema schema({
        {"class", {sort(Kind::Class)}},
        {"direct_base_of", {sort(Kind::Class), sort(Kind::Class)}},
        {"virtual_base_of", {sort(Kind::Class), sort(Kind::Class)}},
        {"base_access", {sort(Kind::Class), sort(Kind::Class), access_sort()}},
        {"declares_member_function", {sort(Kind::Class), sort(Kind::Function)}},
        {"function_name", {sort(Kind::Function), sort(Kind::Symbol)}},
        {"signature", {sort(Kind::Function), sort(Kind::Symbol)}},
        {"virtual_kw", {sort(Kind::Function)}},
        {"pure_virtual", {sort(Kind::Function)}},
        {"destructor", {sort(Kind::Function)}},
        {"constructor", {sort(Kind::Function)}},
        {"data_member", {sort(Kind::Class), sort(Kind::DataMember)}},
        {"member_access", {sort(Kind::Class), sort(Kind::DataMember), access_sort()}},
    });
    return schema;
}

const PredicateSchema* Schema::find(std::string_view name) const {
    auto it = std::lower_bound(predicates_.begin(), predicates_.end(), name,
                               [](const PredicateSchema& p, std::string_view n) { return p.name < n; });
    if (it == predicates_.end() || it->name != name) return nullptr;
    return &*it;
}

FactBase::FactBase() {
    for (const auto& p : Schema::base().predicates()) facts_.emplace(p.name, std::set<Tuple>{});
}

void FactBase::check_mutable() const {
    if (frozen_) throw std::logic_error("fact base is frozen");
}

EntityId FactBase::intern(Kind kind, std::string_view qualified_name, std::optional<SourceLoc> loc) {
    if (qualified_name.empty()) throw std::invalid_argument("empty qualified name");
    if (loc && (loc->line < 1 || loc->column < 1)) throw std::invalid_argument("source location must be 1-based");
    auto key = intern_key(kind, qualified_name);
    if (auto it = index_.find(key); it != index_.end()) return EntityId{it->second};
    check_mutable();
    auto ordinal = static_cast<std::uint32_t>(entities_.size());
    entities_.push_back(Entity{kind, std::string(qualified_name), std::move(loc)});
    index_.emplace(std::move(key), ordinal);
    return EntityId{ordinal};
}

std::optional<EntityId> FactBase::find(Kind kind, std::string_view qualified_name) const {
    auto it = index_.find(intern_key(kind, qualified_name));
    if (it == index_.end()) return std::nullopt;
    return EntityId{it->second};
}

void FactBase::check_tuple(const PredicateSchema& schema, const Tuple& args) const {
    if (args.size() != schema.arity()) {
        throw Error(ErrorCode::ArityMismatch, schema.name + " expects " + std::to_string(schema.arity()) +
                                                  " arguments, got " + std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].ordinal >= entities_.size()) {
            throw Error(ErrorCode::SortMismatch, schema.name + ": argument " + std::to_string(i + 1) +
                                                     " is not an interned entity");
        }
        const Entity& e = entities_[args[i].ordinal];
        const ArgSort& s = schema.args[i];
        if (e.kind != s.kind) {
            throw Error(ErrorCode::SortMismatch,
                        schema.name + ": argument " + std::to_string(i + 1) + " must be a " +
                            std::string(kind_name(s.kind)) + ", got " + std::string(kind_name(e.kind)) +
                            " '" + e.qualified_name + "'");
        }
        if (!s.allowed.empty() &&
            std::find(s.allowed.begin(), s.allowed.end(), e.qualified_name) == s.allowed.end()) {
            throw Error(ErrorCode::SortMismatch, schema.name + ": '" + e.qualified_name +
                                                     "' is not an admissible value for argument " +
                                                     std::to_string(i + 1));
        }
    }
}

void FactBase::assert_fact(std::string_view predicate, const Tuple& args) {
    const PredicateSchema* schema = Schema::base().find(predicate);
    if (!schema) throw Error(ErrorCode::UnknownPredicate, "unknown predicate '" + std::string(predicate) + "'");
    check_tuple(*schema, args);
    auto& set = facts_.find(predicate)->second;
    if (set.contains(args)) return;
    check_mutable();
    set.insert(args);
}

void FactBase::assert_named(std::string_view predicate, std::span<const std::string_view> names) {
    const PredicateSchema* schema = Schema::base().find(predicate);
    if (!schema) throw Error(ErrorCode::UnknownPredicate, "unknown predicate '" + std::string(predicate) + "'");
    if (names.size() != schema->arity()) {
        throw Error(ErrorCode::ArityMismatch, schema->name + " expects " + std::to_string(schema->arity()) +
                                                  " arguments, got " + std::to_string(names.size()));
    }
    Tuple args;
    args.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) args.push_back(intern(schema->args[i].kind, names[i]));
    assert_fact(predicate, args);
}

std::set<Tuple> FactBase::tuples(std::string_view predicate) const { return extension(predicate); }

const std::set<Tuple>& FactBase::extension(std::string_view predicate) const {
    auto it = facts_.find(predicate);
    if (it == facts_.end()) {
        throw Error(ErrorCode::UnknownPredicate, "unknown predicate '" + std::string(predicate) + "'");
    }
    return it->second;
}

void FactBase::merge(const FactBase& other) {
    std::vector<EntityId> remap;
    remap.reserve(other.entities_.size());
    for (const Entity& e : other.entities_) {
        EntityId id = intern(e.kind, e.qualified_name, e.loc);
        Entity& mine = entities_[id.ordinal];
        if (!mine.loc && e.loc) {
            check_mutable();
            mine.loc = e.loc;
        }
        remap.push_back(id);
    }
    for (const auto& [name, set] : other.facts_) {
        for (const Tuple& t : set) {
            Tuple mapped;
            mapped.reserve(t.size());
            for (EntityId id : t) mapped.push_back(remap[id.ordinal]);
            assert_fact(name, mapped);
        }
    }
}

bool FactBase::schema_consistent() const {
    for (const auto& [name, set] : facts_) {
        const PredicateSchema* schema = Schema::base().find(name);
        if (!schema) return false;
        for (const Tuple& t : set) {
            try {
                check_tuple(*schema, t);
            } catch (const Error&) {
                return false;
            }
        }
    }
    return true;
}

std::size_t FactBase::fact_count() const {
    std::size_t n = 0;
    for (const auto& [name, set] : facts_) n += set.size();
    return n;
}

bool operator==(const FactBase& lhs, const FactBase& rhs) {
    using EntityKey = std::tuple<Kind, std::string, std::optional<SourceLoc>>;
    auto entity_keys = [](const FactBase& fb) {
        std::set<EntityKey> keys;
        for (const Entity& e : fb.entities_) {
            if (e.kind != Kind::Symbol) keys.emplace(e.kind, e.qualified_name, e.loc);
        }
        return keys;
    };
    auto fact_names = [](const FactBase& fb) {
        std::map<std::string, std::set<std::vector<std::string>>> out;
        for (const auto& [name, set] : fb.facts_) {
            auto& dst = out[name];
            for (const Tuple& t : set) {
                std::vector<std::string> row;
                for (EntityId id : t) row.push_back(fb.entity(id).qualified_name);
                dst.insert(std::move(row));
            }
        }
        return out;
    };
    return entity_keys(lhs) == entity_keys(rhs) && fact_names(lhs) == fact_names(rhs);
}

}  // namespace strucheck
