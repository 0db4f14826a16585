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
#include <limits>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "strucheck/datalog.hpp"

namespace strucheck {

namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

// Insertion-ordered tuple set with lazily maintained hash indexes, one per
// combination of bound argument positions.
class Relation {
public:
    using Rows = std::vector<std::uint32_t>;

    bool contains(const Tuple& t) const { return set_.contains(t); }

    bool insert(const Tuple& t) {
        if (!set_.insert(t).second) return false;
        rows_.push_back(t);
        return true;
    }

    const std::vector<Tuple>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    const Rows& lookup(std::uint64_t mask, const Tuple& key) {
        Index& index = indexes_[mask];
        for (; index.built < rows_.size(); ++index.built) {
            const Tuple& row = rows_[index.built];
            Tuple k;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (mask & (std::uint64_t{1} << i)) k.push_back(row[i]);
            }
            index.buckets[std::move(k)].push_back(static_cast<std::uint32_t>(index.built));
        }
        auto it = index.buckets.find(key);
        return it == index.buckets.end() ? kEmpty : it->second;
    }

private:
    struct Index {
        std::size_t built = 0;
        std::unordered_map<Tuple, Rows, TupleHash> buckets;
    };

    static inline const Rows kEmpty{};
    std::vector<Tuple> rows_;
    std::unordered_set<Tuple, TupleHash> set_;
    std::unordered_map<std::uint64_t, Index> indexes_;
};

// A clause argument after compilation: a variable slot or a resolved constant.
struct Slot {
    bool is_var;
    std::uint32_t value;  // variable index or entity ordinal (kAbsent if unknown)
};

struct Scan {
    std::string predicate;
    std::vector<Slot> args;
    std::uint64_t mask = 0;              // positions bound before the scan
    std::vector<std::size_t> binds;      // positions that bind a variable first
    std::vector<std::size_t> repeats;    // positions repeating a variable bound in this scan
    bool delta = false;
};

struct Negation {
    std::string predicate;
    std::vector<Slot> args;
};

struct Inequality {
    Slot lhs, rhs;
};

using Step = std::variant<Scan, Negation, Inequality>;

struct Plan {
    std::vector<Step> steps;
    std::vector<Slot> head;
    std::string head_predicate;
    std::size_t var_count = 0;
};

class Evaluator {
public:
    Evaluator(const Program& program, Model seed) : program_(program), model_(std::move(seed)) {}

    Model run() {
        validate(program_);
        Stratification strata = stratify(program_);
        for (const auto& [name, arity] : program_.derived) {
            model_.declare(name);
            auto& rel = full_[name];
            for (const Tuple& t : *model_.derived(name)) rel.insert(t);
        }
        for (const auto& stratum : strata.strata) run_stratum(stratum);
        for (const auto& [name, rel] : full_) {
            for (const Tuple& t : rel.rows()) model_.insert(name, t);
        }
        return std::move(model_);
    }

private:
    std::uint32_t resolve(const Term& t) const {
        auto id = model_.facts().find(t.kind, t.name);
        return id ? id->ordinal : kAbsent;
    }

    Relation& base(const std::string& predicate) {
        auto [it, inserted] = base_.try_emplace(predicate);
        if (inserted) {
            for (const Tuple& t : model_.facts().extension(predicate)) it->second.insert(t);
        }
        return it->second;
    }

    Relation& relation(const std::string& predicate, bool delta) {
        if (delta) return delta_[predicate];
        if (auto it = full_.find(predicate); it != full_.end()) return it->second;
        return base(predicate);
    }

    // Greedy order: the delta literal first, then the positive literal with the
    // most bound arguments (written order breaks ties). Negations and
    // disequalities run as soon as their variables are bound.
    Plan compile(const Clause& clause, std::optional<std::size_t> delta_pos) const {
        const std::optional<std::size_t> delta_literal = delta_pos;
        Plan plan;
        plan.head_predicate = clause.head.predicate;
        std::map<std::string, std::uint32_t> vars;
        auto slot = [&](const Term& t) {
            if (!t.is_var) return Slot{false, resolve(t)};
            auto [it, inserted] = vars.emplace(t.name, static_cast<std::uint32_t>(vars.size()));
            return Slot{true, it->second};
        };

        std::vector<std::size_t> positives;
        std::vector<std::size_t> filters;
        for (std::size_t i = 0; i < clause.body.size(); ++i) {
            const auto* lit = std::get_if<Literal>(&clause.body[i]);
            (lit && !lit->negated ? positives : filters).push_back(i);
        }

        std::set<std::string> bound;
        auto all_bound = [&](const std::vector<Term>& terms) {
            return std::all_of(terms.begin(), terms.end(), [&](const Term& t) { return !t.is_var || bound.contains(t.name); });
        };
        auto place_filters = [&] {
            for (auto it = filters.begin(); it != filters.end();) {
                const BodyItem& item = clause.body[*it];
                if (const auto* lit = std::get_if<Literal>(&item)) {
                    if (!all_bound(lit->args)) {
                        ++it;
                        continue;
                    }
                    Negation neg{lit->predicate, {}};
                    for (const Term& t : lit->args) neg.args.push_back(slot(t));
                    plan.steps.emplace_back(std::move(neg));
                } else {
                    const auto& d = std::get<Disequality>(item);
                    if (!all_bound({d.lhs, d.rhs})) {
                        ++it;
                        continue;
                    }
                    plan.steps.emplace_back(Inequality{slot(d.lhs), slot(d.rhs)});
                }
                it = filters.erase(it);
            }
        };

        place_filters();
        while (!positives.empty()) {
            auto pick = positives.begin();
            if (delta_pos) {
                pick = std::find(positives.begin(), positives.end(), *delta_pos);
                delta_pos.reset();
            } else {
                long best = -1;
                for (auto it = positives.begin(); it != positives.end(); ++it) {
                    const auto& lit = std::get<Literal>(clause.body[*it]);
                    long score = 0;
                    for (const Term& t : lit.args) score += (!t.is_var || bound.contains(t.name)) ? 1 : 0;
                    if (all_bound(lit.args)) score += 1000;
                    if (score > best) {
                        best = score;
                        pick = it;
                    }
                }
            }
            const std::size_t pos = *pick;
            positives.erase(pick);
            const auto& lit = std::get<Literal>(clause.body[pos]);
            Scan scan;
            scan.predicate = lit.predicate;
            scan.delta = delta_literal == pos;
            std::set<std::string> fresh;
            for (std::size_t i = 0; i < lit.args.size(); ++i) {
                const Term& t = lit.args[i];
                if (!t.is_var || bound.contains(t.name)) {
                    scan.mask |= std::uint64_t{1} << i;
                } else if (fresh.insert(t.name).second) {
                    scan.binds.push_back(i);
                } else {
                    scan.repeats.push_back(i);
                }
                scan.args.push_back(slot(t));
            }
            for (const Term& t : lit.args) {
                if (t.is_var) bound.insert(t.name);
            }
            plan.steps.emplace_back(std::move(scan));
            place_filters();
        }
        for (const Term& t : clause.head.args) plan.head.push_back(slot(t));
        plan.var_count = vars.size();
        return plan;
    }

    void execute(Plan& plan, std::size_t step, std::vector<std::uint32_t>& env, std::vector<Tuple>& out) {
        if (step == plan.steps.size()) {
            Tuple t;
            t.reserve(plan.head.size());
            for (const Slot& s : plan.head) t.push_back(EntityId{env[s.value]});
            out.push_back(std::move(t));
            return;
        }
        auto value = [&](const Slot& s) { return s.is_var ? env[s.value] : s.value; };
        Step& current = plan.steps[step];
        if (auto* neg = std::get_if<Negation>(&current)) {
            Tuple t;
            for (const Slot& s : neg->args) t.push_back(EntityId{value(s)});
            if (!relation(neg->predicate, false).contains(t)) execute(plan, step + 1, env, out);
            return;
        }
        if (auto* ne = std::get_if<Inequality>(&current)) {
            if (value(ne->lhs) != value(ne->rhs)) execute(plan, step + 1, env, out);
            return;
        }
        Scan& scan = std::get<Scan>(current);
        Relation& rel = relation(scan.predicate, scan.delta);
        auto visit = [&](const Tuple& row) {
            for (std::size_t i : scan.binds) env[scan.args[i].value] = row[i].ordinal;
            for (std::size_t i : scan.repeats) {
                if (env[scan.args[i].value] != row[i].ordinal) return;
            }
            execute(plan, step + 1, env, out);
        };
        if (scan.mask == 0) {
            const auto& rows = rel.rows();
            for (std::size_t r = 0; r < rows.size(); ++r) visit(rows[r]);
            return;
        }
        Tuple key;
        for (std::size_t i = 0; i < scan.args.size(); ++i) {
            if (scan.mask & (std::uint64_t{1} << i)) key.push_back(EntityId{value(scan.args[i])});
        }
        const auto& rows = rel.rows();
        for (std::uint32_t r : rel.lookup(scan.mask, key)) visit(rows[r]);
    }

    // Runs a plan and returns the head tuples not yet in the full relation.
    void fire(Plan& plan, std::map<std::string, Relation>& fresh) {
        std::vector<std::uint32_t> env(plan.var_count, kAbsent);
        std::vector<Tuple> out;
        execute(plan, 0, env, out);
        Relation& full = full_[plan.head_predicate];
        Relation& pending = fresh[plan.head_predicate];
        for (Tuple& t : out) {
            if (!full.contains(t)) pending.insert(t);
        }
    }

    void run_stratum(const std::vector<std::string>& preds) {
        std::set<std::string> in_stratum(preds.begin(), preds.end());
        struct Compiled {
            Plan all;
            std::vector<Plan> deltas;
        };
        std::vector<Compiled> compiled;
        for (const Clause& c : program_.clauses) {
            if (!in_stratum.contains(c.head.predicate)) continue;
            Compiled cc;
            cc.all = compile(c, std::nullopt);
            for (std::size_t i = 0; i < c.body.size(); ++i) {
                const auto* lit = std::get_if<Literal>(&c.body[i]);
                if (lit && !lit->negated && in_stratum.contains(lit->predicate)) {
                    cc.deltas.push_back(compile(c, i));
                }
            }
            compiled.push_back(std::move(cc));
        }

        std::map<std::string, Relation> fresh;
        for (Compiled& cc : compiled) fire(cc.all, fresh);
        while (true) {
            bool any = false;
            delta_.clear();
            for (auto& [name, rel] : fresh) {
                for (const Tuple& t : rel.rows()) full_[name].insert(t);
                any = any || !rel.empty();
            }
            if (!any) break;
            delta_ = std::move(fresh);
            fresh.clear();
            for (Compiled& cc : compiled) {
                for (Plan& p : cc.deltas) fire(p, fresh);
            }
        }
        delta_.clear();
    }

    const Program& program_;
    Model model_;
    std::map<std::string, Relation> base_;
    std::map<std::string, Relation> full_;
    std::map<std::string, Relation> delta_;
};

}  // namespace

Model evaluate(const Program& program, const FactBase& fb) { return evaluate(program, Model(fb)); }

Model evaluate(const Program& program, Model seed) { return Evaluator(program, std::move(seed)).run(); }

}  // namespace strucheck
