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

#include "strucheck/report.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

namespace strucheck {

namespace {

std::tuple<std::string, std::uint32_t> loc_key(const std::optional<SourceLoc>& loc) {
    if (!loc) return {"-", 0};
    return {loc->file, loc->line};
}

std::string loc_prefix(const std::optional<SourceLoc>& loc) {
    if (!loc) return "-:0:0";
    return loc->file + ':' + std::to_string(loc->line) + ':' + std::to_string(loc->column);
}

std::vector<std::string> witness_names(const Violation& v) {
    std::vector<std::string> names;
    for (const WitnessBinding& b : v.witness) names.push_back(b.name);
    return names;
}

}  // namespace

std::vector<Violation> collect_violations(const Model& model, const std::vector<RuleSpec>& rules,
                                          bool dedup_symmetric) {
    const FactBase& fb = model.facts();
    std::vector<Violation> out;
    for (const RuleSpec& rule : rules) {
        std::vector<Tuple> tuples = query(model, rule.head_predicate);
        std::set<std::vector<std::string>> seen_names;
        if (dedup_symmetric && rule.symmetric) {
            for (const Tuple& t : tuples) {
                std::vector<std::string> names;
                for (EntityId id : t) names.push_back(fb.entity(id).qualified_name);
                seen_names.insert(std::move(names));
            }
        }
        for (const Tuple& t : tuples) {
            Violation v;
            v.rule_id = rule.id;
            std::map<std::string, std::string> bindings;
            for (std::size_t i = 0; i < t.size(); ++i) {
                const Entity& e = fb.entity(t[i]);
                v.witness.push_back(WitnessBinding{rule.variables.at(i), e.qualified_name, e.loc});
                bindings[rule.variables[i]] = e.qualified_name;
            }
            if (dedup_symmetric && rule.symmetric) {
                auto [i, j] = *rule.symmetric;
                std::vector<std::string> twin = witness_names(v);
                std::swap(twin[i], twin[j]);
                if (twin < witness_names(v) && seen_names.contains(twin)) continue;
            }
            v.message = format_message(rule.message, bindings);
            out.push_back(std::move(v));
        }
    }
    sort_violations(out);
    return out;
}

void sort_violations(std::vector<Violation>& violations) {
    std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        return std::make_tuple(loc_key(a.primary_loc()), std::cref(a.rule_id), witness_names(a)) <
               std::make_tuple(loc_key(b.primary_loc()), std::cref(b.rule_id), witness_names(b));
    });
}

std::string render_text(const std::vector<Violation>& violations) {
    std::string out;
    for (const Violation& v : violations) {
        out += loc_prefix(v.primary_loc()) + ": violation[" + v.rule_id + "]: " + v.message + '\n';
        for (const WitnessBinding& b : v.witness) out += "    where " + b.var + " = " + b.name + '\n';
    }
    return out;
}

std::string render_json(const std::vector<Violation>& violations, const std::vector<std::string>& rules_checked) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["schema_version"] = "1";
    doc["rules_checked"] = rules_checked;
    json list = json::array();
    for (const Violation& v : violations) {
        json item;
        item["rule"] = v.rule_id;
        item["message"] = v.message;
        json witness = json::object();
        for (const WitnessBinding& b : v.witness) witness[b.var] = b.name;
        item["witness"] = std::move(witness);
        json locations = json::array();
        for (const WitnessBinding& b : v.witness) {
            json loc;
            loc["file"] = b.loc ? b.loc->file : "-";
            loc["line"] = b.loc ? b.loc->line : 0;
            loc["col"] = b.loc ? b.loc->column : 0;
            locations.push_back(std::move(loc));
        }
        item["locations"] = std::move(locations);
        list.push_back(std::move(item));
    }
    doc["violations"] = std::move(list);
    return doc.dump(2) + '\n';
}

}  // namespace strucheck
