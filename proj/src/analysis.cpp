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
#include <deque>
#include <functional>

#include "strucheck/datalog.hpp"

namespace strucheck {

namespace {

template <typename F>
void for_each_var(const std::vector<Term>& terms, F&& f) {
    for (const Term& t : terms) {
        if (t.is_var) f(t.name);
    }
}

std::string render_term(const Term& t) {
    if (t.is_var) return t.name;
    if (t.kind == Kind::Symbol && is_bare_symbol(t.name)) return t.name;
    return quote(t.name);
}

std::string render_literal(const Literal& lit) {
    std::string out = lit.negated ? "\\+ " : "";
    out += lit.predicate;
    if (!lit.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < lit.args.size(); ++i) {
            if (i) out += ',';
            out += render_term(lit.args[i]);
        }
        out += ')';
    }
    return out;
}

struct Edge {
    std::string target;
    bool negative;
};

}  // namespace

void Program::declare(std::string name, std::size_t arity) {
    auto [it, inserted] = derived.emplace(name, arity);
    if (!inserted && it->second != arity) {
        throw Error(ErrorCode::InvalidClause, "predicate '" + name + "' declared with arities " +
                                                  std::to_string(it->second) + " and " + std::to_string(arity));
    }
}

void Program::add(Clause clause) {
    declare(clause.head.predicate, clause.head.args.size());
    clauses.push_back(std::move(clause));
}

void Program::append(const Program& other) {
    for (const auto& [name, arity] : other.derived) declare(name, arity);
    clauses.insert(clauses.end(), other.clauses.begin(), other.clauses.end());
}

std::optional<std::string> check_safety(const Clause& clause) {
    std::set<std::string> bound;
    for (const BodyItem& item : clause.body) {
        if (const auto* lit = std::get_if<Literal>(&item); lit && !lit->negated) {
            for_each_var(lit->args, [&](const std::string& v) { bound.insert(v); });
        }
    }
    std::set<std::string> unsafe;
    auto need = [&](const std::string& v) {
        if (!bound.contains(v)) unsafe.insert(v);
    };
    for_each_var(clause.head.args, need);
    for (const BodyItem& item : clause.body) {
        if (const auto* lit = std::get_if<Literal>(&item)) {
            if (lit->negated) for_each_var(lit->args, need);
        } else {
            const auto& d = std::get<Disequality>(item);
            for_each_var({d.lhs, d.rhs}, need);
        }
    }
    if (unsafe.empty()) return std::nullopt;
    return *unsafe.begin();
}

void validate(const Program& program) {
    const Schema& schema = Schema::base();
    for (const auto& [name, arity] : program.derived) {
        if (schema.contains(name)) {
            throw Error(ErrorCode::InvalidClause, "derived predicate '" + name + "' clashes with a base predicate");
        }
    }
    auto arity_of = [&](const std::string& name) -> std::optional<std::size_t> {
        if (const auto* p = schema.find(name)) return p->arity();
        if (auto it = program.derived.find(name); it != program.derived.end()) return it->second;
        return std::nullopt;
    };
    auto check_literal = [&](const Literal& lit, const Clause& clause) {
        auto arity = arity_of(lit.predicate);
        if (!arity) {
            throw Error(ErrorCode::UnknownPredicate,
                        "unknown predicate '" + lit.predicate + "' in clause " + dump_clause(clause));
        }
        if (*arity != lit.args.size()) {
            throw Error(ErrorCode::ArityMismatch, "'" + lit.predicate + "' expects " + std::to_string(*arity) +
                                                      " arguments in clause " + dump_clause(clause));
        }
        for (const Term& t : lit.args) {
            if (t.name.empty()) throw Error(ErrorCode::InvalidClause, "empty term in clause " + dump_clause(clause));
        }
    };
    for (const Clause& clause : program.clauses) {
        if (clause.head.negated) throw Error(ErrorCode::InvalidClause, "negated head in " + dump_clause(clause));
        if (!program.derived.contains(clause.head.predicate)) {
            throw Error(ErrorCode::InvalidClause, "head predicate '" + clause.head.predicate + "' is not declared");
        }
        check_literal(clause.head, clause);
        for (const Term& t : clause.head.args) {
            if (!t.is_var) throw Error(ErrorCode::InvalidClause, "constant in head of " + dump_clause(clause));
        }
        for (const BodyItem& item : clause.body) {
            if (const auto* lit = std::get_if<Literal>(&item)) {
                check_literal(*lit, clause);
            } else if (!std::get<Disequality>(item).lhs.is_var) {
                throw Error(ErrorCode::InvalidClause, "disequality must start with a variable in " + dump_clause(clause));
            }
        }
        if (auto var = check_safety(clause)) {
            throw Error(ErrorCode::UnsafeVariable,
                        "variable " + *var + " is not bound by a positive literal in " + dump_clause(clause),
                        std::nullopt, {*var});
        }
    }
}

std::size_t Stratification::stratum_of(std::string_view predicate) const {
    auto it = level.find(predicate);
    return it == level.end() ? 0 : it->second;
}

Stratification stratify(const Program& program) {
    const Schema& schema = Schema::base();
    std::map<std::string, std::vector<Edge>> edges;
    std::map<std::string, bool> negates_base;
    std::map<std::string, std::set<std::string>> dependents;
    for (const auto& [name, arity] : program.derived) {
        edges[name];
        negates_base[name] = false;
    }
    for (const Clause& c : program.clauses) {
        const std::string& head = c.head.predicate;
        edges[head];
        for (const BodyItem& item : c.body) {
            const auto* lit = std::get_if<Literal>(&item);
            if (!lit) continue;
            if (schema.contains(lit->predicate)) {
                if (lit->negated) negates_base[head] = true;
                continue;
            }
            edges[head].push_back(Edge{lit->predicate, lit->negated});
            edges[lit->predicate];
            if (lit->predicate != head) dependents[lit->predicate].insert(head);
        }
    }
    for (auto& [name, out] : edges) {
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.target, a.negative) < std::tie(b.target, b.negative);
        });
    }

    // Tarjan; components come out dependencies-first.
    std::map<std::string, int> index, low;
    std::set<std::string> on_stack;
    std::vector<std::string> stack;
    std::vector<std::vector<std::string>> components;
    int counter = 0;
    std::function<void(const std::string&)> connect = [&](const std::string& v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (const Edge& e : edges[v]) {
            if (!index.contains(e.target)) {
                connect(e.target);
                low[v] = std::min(low[v], low[e.target]);
            } else if (on_stack.contains(e.target)) {
                low[v] = std::min(low[v], index[e.target]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::string> comp;
            std::string w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                comp.push_back(w);
            } while (w != v);
            components.push_back(std::move(comp));
        }
    };
    for (const auto& [name, out] : edges) {
        if (!index.contains(name)) connect(name);
    }

    std::map<std::string, std::size_t> component_of;
    for (std::size_t i = 0; i < components.size(); ++i) {
        for (const auto& p : components[i]) component_of[p] = i;
    }

    for (const auto& [head, out] : edges) {
        for (const Edge& e : out) {
            if (!e.negative || component_of[e.target] != component_of[head]) continue;
            // Path target -> ... -> head inside the component closes the cycle.
            std::vector<std::string> cycle{head};
            if (e.target != head) {
                std::map<std::string, std::string> parent;
                std::deque<std::string> queue{e.target};
                parent[e.target] = e.target;
                while (!queue.empty() && !parent.contains(head)) {
                    std::string v = queue.front();
                    queue.pop_front();
                    for (const Edge& n : edges[v]) {
                        if (component_of[n.target] == component_of[head] && !parent.contains(n.target)) {
                            parent[n.target] = v;
                            queue.push_back(n.target);
                        }
                    }
                }
                std::vector<std::string> path;
                for (std::string v = parent[head]; ; v = parent[v]) {
                    path.push_back(v);
                    if (v == e.target) break;
                }
                std::reverse(path.begin(), path.end());
                cycle.insert(cycle.end(), path.begin(), path.end());
            }
            std::string text;
            for (const auto& p : cycle) text += p + " -> ";
            text += cycle.front();
            throw Error(ErrorCode::CyclicNegation, "predicate depends negatively on itself: " + text, std::nullopt,
                        cycle);
        }
    }

    std::vector<std::size_t> comp_level(components.size(), 0);
    for (std::size_t i = 0; i < components.size(); ++i) {
        std::size_t lvl = 0;
        for (const auto& p : components[i]) {
            if (negates_base[p]) lvl = std::max<std::size_t>(lvl, 1);
            for (const Edge& e : edges[p]) {
                std::size_t j = component_of[e.target];
                if (j == i) continue;
                lvl = std::max(lvl, comp_level[j] + (e.negative ? 1 : 0));
            }
        }
        comp_level[i] = lvl;
    }

    std::map<std::string, std::size_t> level;
    std::size_t max_level = 0;
    for (const auto& [name, out] : edges) {
        level[name] = comp_level[component_of[name]];
        max_level = std::max(max_level, level[name]);
    }
    for (auto& [name, lvl] : level) {
        if (!dependents.contains(name)) lvl = max_level;
    }

    // Renumber densely.
    std::set<std::size_t> used;
    for (const auto& [name, lvl] : level) used.insert(lvl);
    std::map<std::size_t, std::size_t> dense;
    for (std::size_t l : used) dense.emplace(l, dense.size());

    Stratification out;
    out.strata.resize(dense.size());
    for (const auto& [name, lvl] : level) {
        std::size_t d = dense[lvl];
        out.level.emplace(name, d);
        out.strata[d].push_back(name);
    }
    return out;
}

const std::set<Tuple>* Model::derived(std::string_view predicate) const {
    auto it = derived_.find(predicate);
    return it == derived_.end() ? nullptr : &it->second;
}

std::size_t Model::derived_count() const {
    std::size_t n = 0;
    for (const auto& [name, set] : derived_) n += set.size();
    return n;
}

std::vector<Tuple> query(const Model& model, std::string_view predicate) {
    if (const auto* set = model.derived(predicate)) return {set->begin(), set->end()};
    const auto& ext = model.facts().extension(predicate);
    return {ext.begin(), ext.end()};
}

std::string dump_clause(const Clause& clause) {
    std::string out = render_literal(clause.head);
    if (clause.body.empty()) return out + '.';
    out += " :- ";
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
        if (i) out += ", ";
        if (const auto* lit = std::get_if<Literal>(&clause.body[i])) {
            out += render_literal(*lit);
        } else {
            const auto& d = std::get<Disequality>(clause.body[i]);
            out += render_term(d.lhs) + " \\= " + render_term(d.rhs);
        }
    }
    return out + '.';
}

std::string dump_program(const Program& program) {
    std::string out;
    for (const Clause& c : program.clauses) out += dump_clause(c) + '\n';
    return out;
}

}  // namespace strucheck
