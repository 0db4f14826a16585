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

#ifndef STRUCHECK_DATALOG_HPP
#define STRUCHECK_DATALOG_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "strucheck/fact_model.hpp"

namespace strucheck {

/// A variable or a constant. Constants are named entities (or symbols) and are
/// resolved against the fact base at evaluation time; a constant naming an
/// entity the fact base does not contain matches nothing.
struct Term {
    bool is_var = true;
    std::string name;
    Kind kind = Kind::Symbol;  // constants only

    static Term var(std::string name) { return Term{true, std::move(name), Kind::Symbol}; }
    static Term constant(Kind kind, std::string name) { return Term{false, std::move(name), kind}; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Literal {
    std::string predicate;
    std::vector<Term> args;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// `lhs \= rhs`; lhs is always a variable.
struct Disequality {
    Term lhs;
    Term rhs;

    friend bool operator==(const Disequality&, const Disequality&) = default;
};

using BodyItem = std::variant<Literal, Disequality>;

struct Clause {
    Literal head;
    std::vector<BodyItem> body;  // in written order

    friend bool operator==(const Clause&, const Clause&) = default;
};

struct Program {
    std::vector<Clause> clauses;
    std::map<std::string, std::size_t, std::less<>> derived;  // name -> arity

    void declare(std::string name, std::size_t arity);
    void add(Clause clause);
    /// Appends another program's declarations and clauses.
    void append(const Program& other);
};

/// Range restriction: every variable of the head, of a negated literal and of
/// a disequality occurs in a positive body literal. Returns the
/// lexicographically smallest offending variable, if any.
std::optional<std::string> check_safety(const Clause& clause);

/// Checks declarations and arities against the base schema; throws
/// InvalidClause, UnknownPredicate or ArityMismatch, and UnsafeVariable for
/// the first unsafe clause.
void validate(const Program& program);

struct Stratification {
    std::vector<std::vector<std::string>> strata;  // derived predicates, sorted within a stratum
    std::map<std::string, std::size_t, std::less<>> level;

    std::size_t stratum_of(std::string_view predicate) const;  // 0 for base predicates
};

/// Negated dependencies, including negation of a base predicate, land in a
/// strictly higher stratum; positive dependencies in the same or a higher one.
/// Predicates that no clause depends on are placed in the last stratum.
/// Throws CyclicNegation whose details list the predicates on the cycle.
Stratification stratify(const Program& program);

/// Base facts plus the derived extension of a program.
class Model {
public:
    explicit Model(const FactBase& fb) : facts_(&fb) {}

    const FactBase& facts() const { return *facts_; }

    /// Null when `predicate` is not derived in this model.
    const std::set<Tuple>* derived(std::string_view predicate) const;
    const std::map<std::string, std::set<Tuple>, std::less<>>& derived_relations() const { return derived_; }
    std::size_t derived_count() const;

    bool insert(const std::string& predicate, Tuple tuple) { return derived_[predicate].insert(std::move(tuple)).second; }
    void declare(const std::string& predicate) { derived_.try_emplace(predicate); }

    friend bool operator==(const Model& lhs, const Model& rhs) {
        return lhs.facts_ == rhs.facts_ && lhs.derived_ == rhs.derived_;
    }

private:
    const FactBase* facts_;
    std::map<std::string, std::set<Tuple>, std::less<>> derived_;
};

/// Semi-naive bottom-up evaluation, stratum by stratum.
Model evaluate(const Program& program, const FactBase& fb);
/// Continues from an existing model (its derived tuples are kept).
Model evaluate(const Program& program, Model seed);

/// Reference evaluator: re-runs every clause over the full relations with a
/// plain nested-loop join until nothing changes.
Model evaluate_naive(const Program& program, const FactBase& fb);

/// Every tuple of a base or derived predicate, ordered by ordinals. Throws
/// UnknownPredicate.
std::vector<Tuple> query(const Model& model, std::string_view predicate);

/// Prolog-style rendering, e.g. `p(X,Y) :- q(X,Z), \+ r(Z), X \= Y.`
std::string dump_clause(const Clause& clause);
/// One clause per line, in program order.
std::string dump_program(const Program& program);

}  // namespace strucheck

#endif  // STRUCHECK_DATALOG_HPP
