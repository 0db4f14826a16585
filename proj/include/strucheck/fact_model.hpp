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

#ifndef STRUCHECK_FACT_MODEL_HPP
#define STRUCHECK_FACT_MODEL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "strucheck/error.hpp"

namespace strucheck {

/// Entity kinds double as argument sorts. Symbols (function names, signature
/// strings, access levels) live in the same entity table under their own kind
/// so the evaluator only ever sees ordinals.
enum class Kind : std::uint8_t { Class, Function, DataMember, Symbol };

std::string_view kind_name(Kind kind);
std::optional<Kind> parse_kind(std::string_view name);

struct EntityId {
    std::uint32_t ordinal = 0;

    friend auto operator<=>(EntityId, EntityId) = default;
};

using Tuple = std::vector<EntityId>;

struct TupleHash {
    std::size_t operator()(const Tuple& tuple) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (EntityId id : tuple) {
            h ^= id.ordinal + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct Entity {
    Kind kind;
    std::string qualified_name;
    std::optional<SourceLoc> loc;
};

struct ArgSort {
    Kind kind;
    /// Admissible values for a symbol argument; empty means unrestricted.
    std::vector<std::string> allowed;
};

struct PredicateSchema {
    std::string name;
    std::vector<ArgSort> args;

    std::size_t arity() const { return args.size(); }
};

/// The fixed vocabulary of base predicates describing program structure.
class Schema {
public:
    static const Schema& base();

    const PredicateSchema* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }
    const std::vector<PredicateSchema>& predicates() const { return predicates_; }

private:
    explicit Schema(std::vector<PredicateSchema> predicates);
    std::vector<PredicateSchema> predicates_;
};

/// Ground facts abstracting one program: an entity table plus one tuple set
/// per base predicate. Mutable until `freeze()`.
class FactBase {
public:
    FactBase();

    /// Returns the existing id for a known (kind, name) pair. The location is
    /// only recorded on the first intern.
    EntityId intern(Kind kind, std::string_view qualified_name,
                    std::optional<SourceLoc> loc = std::nullopt);
    std::optional<EntityId> find(Kind kind, std::string_view qualified_name) const;

    const Entity& entity(EntityId id) const { return entities_.at(id.ordinal); }
    const std::vector<Entity>& entities() const { return entities_; }
    std::size_t entity_count() const { return entities_.size(); }

    /// Throws UnknownPredicate, ArityMismatch or SortMismatch. Re-asserting an
    /// existing tuple is a no-op.
    void assert_fact(std::string_view predicate, const Tuple& args);

    /// Interns each argument under the sort its position declares, then asserts.
    void assert_named(std::string_view predicate, std::span<const std::string_view> names);
    void assert_named(std::string_view predicate, std::initializer_list<std::string_view> names) {
        assert_named(predicate, std::span<const std::string_view>(names.begin(), names.size()));
    }

    /// Snapshot copy; later assertions do not affect it.
    std::set<Tuple> tuples(std::string_view predicate) const;
    /// Live view, for readers of a frozen fact base.
    const std::set<Tuple>& extension(std::string_view predicate) const;

    /// Union with another fact base. Entities without a location pick up the
    /// other side's location.
    void merge(const FactBase& other);

    void freeze() noexcept { frozen_ = true; }
    bool frozen() const noexcept { return frozen_; }

    /// Full scan: every tuple matches its predicate's arity and sorts and
    /// refers to known entities.
    bool schema_consistent() const;

    std::size_t fact_count() const;

    /// Structural equality by entity names, kinds and locations; ordinals are
    /// not compared.
    friend bool operator==(const FactBase& lhs, const FactBase& rhs);

private:
    void check_mutable() const;
    void check_tuple(const PredicateSchema& schema, const Tuple& args) const;

    std::vector<Entity> entities_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::map<std::string, std::set<Tuple>, std::less<>> facts_;
    bool frozen_ = false;
};

/// Serializes to the line-oriented `.facts` format. Output is canonical:
/// entity lines sorted, then facts grouped by predicate and sorted by the
/// names of their arguments.
std::string write_fact_file(const FactBase& fb);

/// Parses a `.facts` file. Errors carry `source_name` and the line number.
FactBase read_fact_file(std::string_view text, std::string_view source_name = "<facts>");

/// One fact-file line without the trailing newline, e.g. `direct_base_of("A","B").`
std::string format_fact(const FactBase& fb, std::string_view predicate, const Tuple& args);

/// `"..."` with backslash escapes for quotes and backslashes.
std::string quote(std::string_view text);
/// True for identifiers of the form [a-z_][a-z0-9_]*.
bool is_bare_symbol(std::string_view text);

}  // namespace strucheck

#endif  // STRUCHECK_FACT_MODEL_HPP
