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

#include <limits>

#include "strucheck/datalog.hpp"

namespace strucheck {

namespace {

// Enumerates substitutions over the positive literals in written order, then
// checks negations and disequalities on the complete substitution.
class NaiveClause {
public:
    NaiveClause(const Clause& clause, const Model& model) : clause_(clause), model_(model) {
        for (const BodyItem& item : clause.body) {
            if (const auto* lit = std::get_if<Literal>(&item); lit && !lit->negated) positives_.push_back(lit);
        }
    }

    void run(std::vector<Tuple>& out) {
        std::map<std::string, EntityId> env;
        enumerate(0, env, out);
    }

private:
    const std::set<Tuple>& extension(const std::string& predicate) const {
        if (const auto* d = model_.derived(predicate)) return *d;
        return model_.facts().extension(predicate);
    }

    std::optional<EntityId> constant(const Term& t) const { return model_.facts().find(t.kind, t.name); }

    std::optional<EntityId> value(const Term& t, const std::map<std::string, EntityId>& env) const {
        if (!t.is_var) return constant(t);
        auto it = env.find(t.name);
        if (it == env.end()) return std::nullopt;
        return it->second;
    }

    void enumerate(std::size_t i, std::map<std::string, EntityId>& env, std::vector<Tuple>& out) {
        if (i == positives_.size()) {
            if (filters_hold(env)) {
                Tuple head;
                for (const Term& t : clause_.head.args) head.push_back(env.at(t.name));
                out.push_back(std::move(head));
            }
            return;
        }
        const Literal& lit = *positives_[i];
        for (const Tuple& row : extension(lit.predicate)) {
            std::map<std::string, EntityId> next = env;
            bool ok = true;
            for (std::size_t k = 0; k < lit.args.size() && ok; ++k) {
                const Term& t = lit.args[k];
                if (!t.is_var) {
                    auto c = constant(t);
                    ok = c && *c == row[k];
                } else if (auto it = next.find(t.name); it != next.end()) {
                    ok = it->second == row[k];
                } else {
                    next.emplace(t.name, row[k]);
                }
            }
            if (ok) enumerate(i + 1, next, out);
        }
    }

    bool filters_hold(const std::map<std::string, EntityId>& env) const {
        for (const BodyItem& item : clause_.body) {
            if (const auto* lit = std::get_if<Literal>(&item)) {
                if (!lit->negated) continue;
                Tuple t;
                bool resolvable = true;
                for (const Term& term : lit->args) {
                    auto v = value(term, env);
                    if (!v) {
                        resolvable = false;
                        break;
                    }
                    t.push_back(*v);
                }
                // A constant missing from the fact base cannot match.
                if (resolvable && extension(lit->predicate).contains(t)) return false;
            } else {
                const auto& d = std::get<Disequality>(item);
                auto l = value(d.lhs, env);
                auto r = value(d.rhs, env);
                if (l && r && *l == *r) return false;
            }
        }
        return true;
    }

    const Clause& clause_;
    const Model& model_;
    std::vector<const Literal*> positives_;
};

}  // namespace

Model evaluate_naive(const Program& program, const FactBase& fb) {
    validate(program);
    Stratification strata = stratify(program);
    Model model(fb);
    for (const auto& [name, arity] : program.derived) model.declare(name);
    for (const auto& stratum : strata.strata) {
        std::set<std::string> heads(stratum.begin(), stratum.end());
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Clause& c : program.clauses) {
                if (!heads.contains(c.head.predicate)) continue;
                std::vector<Tuple> out;
                NaiveClause(c, model).run(out);
                for (Tuple& t : out) changed = model.insert(c.head.predicate, std::move(t)) || changed;
            }
        }
    }
    return model;
}

}  // namespace strucheck
