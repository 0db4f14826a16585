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

#include "strucheck/rule_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace strucheck {

namespace {

struct DslToken {
    enum class Kind { Ident, String, Punct, End } kind;
    std::string text;
    SourceLoc loc;
};

std::vector<DslToken> lex(std::string_view src, std::string_view file) {
    std::vector<DslToken> out;
    std::size_t pos = 0;
    std::uint32_t line = 1, col = 1;
    auto here = [&] { return SourceLoc{std::string(file), line, col}; };
    auto advance = [&] {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    };
    while (pos < src.size()) {
        char c = src[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
        } else if (c == '%') {
            while (pos < src.size() && src[pos] != '\n') advance();
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            SourceLoc loc = here();
            std::size_t start = pos;
            while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) advance();
            out.push_back({DslToken::Kind::Ident, std::string(src.substr(start, pos - start)), loc});
        } else if (c == '"') {
            SourceLoc loc = here();
            advance();
            std::string text;
            while (true) {
                if (pos >= src.size() || src[pos] == '\n') {
                    throw Error(ErrorCode::DslSyntaxError, "unterminated string", loc);
                }
                char d = src[pos];
                advance();
                if (d == '"') break;
                if (d == '\\') {
                    if (pos >= src.size()) throw Error(ErrorCode::DslSyntaxError, "unterminated string", loc);
                    text.push_back(src[pos]);
                    advance();
                } else {
                    text.push_back(d);
                }
            }
            out.push_back({DslToken::Kind::String, std::move(text), loc});
        } else if (c == '!' && pos + 1 < src.size() && src[pos + 1] == '=') {
            out.push_back({DslToken::Kind::Punct, "!=", here()});
            advance();
            advance();
        } else if (c == ':' || c == ',' || c == '(' || c == ')' || c == '=') {
            out.push_back({DslToken::Kind::Punct, std::string(1, c), here()});
            advance();
        } else {
            throw Error(ErrorCode::DslSyntaxError, std::string("unexpected character '") + c + "'", here());
        }
    }
    out.push_back({DslToken::Kind::End, "<end of input>", here()});
    return out;
}

std::optional<Kind> domain_kind(std::string_view name) {
    auto k = parse_kind(name);
    if (!k || *k == Kind::Symbol) return std::nullopt;
    return k;
}

class DslParser {
public:
    explicit DslParser(std::vector<DslToken> toks) : toks_(std::move(toks)) {}

    Ruleset ruleset() {
        Ruleset out;
        while (peek().kind != DslToken::Kind::End) {
            if (is_ident("relation")) {
                out.closures.push_back(closure_def());
            } else if (is_ident("rule")) {
                out.rules.push_back(rule_def());
            } else {
                fail("expected 'relation' or 'rule'");
            }
        }
        return out;
    }

private:
    const DslToken& peek() const { return toks_[pos_]; }
    bool is_ident(std::string_view text) const {
        return peek().kind == DslToken::Kind::Ident && peek().text == text;
    }
    bool is_punct(std::string_view text) const {
        return peek().kind == DslToken::Kind::Punct && peek().text == text;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw Error(ErrorCode::DslSyntaxError, expected + ", found '" + peek().text + "'", peek().loc);
    }

    const DslToken& take() { return toks_[pos_++]; }

    void keyword(std::string_view kw) {
        if (!is_ident(kw)) fail("expected '" + std::string(kw) + "'");
        ++pos_;
    }
    void punct(std::string_view p) {
        if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
        ++pos_;
    }
    const DslToken& ident(std::string_view what) {
        if (peek().kind != DslToken::Kind::Ident) fail("expected " + std::string(what));
        return take();
    }
    const DslToken& string(std::string_view what) {
        if (peek().kind != DslToken::Kind::String) fail("expected " + std::string(what));
        return take();
    }

    ClosureDef closure_def() {
        SourceLoc loc = take().loc;
        ClosureDef def;
        def.name = ident("relation name").text;
        def.loc = loc;
        punct("=");
        keyword("closure");
        punct("(");
        def.base = ident("base relation name").text;
        punct(")");
        return def;
    }

    RuleAst rule_def() {
        RuleAst rule;
        rule.loc = take().loc;
        rule.name = ident("rule name").text;
        if (peek().kind == DslToken::Kind::String) rule.title = take().text;
        punct(":");
        keyword("forall");
        rule.bindings.push_back(binding());
        while (is_punct(",")) {
            ++pos_;
            rule.bindings.push_back(binding());
        }
        keyword("where");
        rule.conditions.push_back(condition());
        while (is_punct(",")) {
            ++pos_;
            rule.conditions.push_back(condition());
        }
        keyword("report");
        rule.message = string("report message string").text;
        return rule;
    }

    Binding binding() {
        const DslToken& var = ident("variable");
        punct(":");
        const DslToken& dom = ident("domain");
        auto kind = domain_kind(dom.text);
        if (!kind) {
            throw Error(ErrorCode::DslSyntaxError,
                        "expected domain 'class', 'function' or 'data_member', found '" + dom.text + "'", dom.loc);
        }
        return Binding{var.text, *kind};
    }

    DslTerm term() {
        if (peek().kind == DslToken::Kind::String) return DslTerm{DslTerm::Form::Quoted, take().text};
        return DslTerm{DslTerm::Form::Symbol, ident("variable or symbol").text};
    }

    Condition condition() {
        bool negated = false;
        if (is_ident("not") && toks_[pos_ + 1].kind == DslToken::Kind::Ident) {
            negated = true;
            ++pos_;
        }
        const DslToken& head = ident("condition");
        if (!negated && is_punct("!=")) {
            ++pos_;
            return DisequalityCondition{head.text, term()};
        }
        AtomCondition atom{negated, head.text, {}};
        punct("(");
        atom.args.push_back(term());
        while (is_punct(",")) {
            ++pos_;
            atom.args.push_back(term());
        }
        punct(")");
        return atom;
    }

    std::vector<DslToken> toks_;
    std::size_t pos_ = 0;
};

[[noreturn]] void unbound(const std::string& var, const RuleAst& rule) {
    throw Error(ErrorCode::UnboundVariable, "variable '" + var + "' in rule '" + rule.name + "' is not bound by forall",
                rule.loc, {var, rule.name});
}

// Decides, for every bare identifier, whether it names a bound variable or a
// symbol, and checks that everything the rule mentions is bound.
void resolve_terms(RuleAst& rule, const Signatures& known) {
    std::set<std::string> bound;
    for (const Binding& b : rule.bindings) {
        if (!bound.insert(b.var).second) {
            throw Error(ErrorCode::DslSyntaxError, "variable '" + b.var + "' bound twice in rule '" + rule.name + "'",
                        rule.loc);
        }
    }
    for (Condition& cond : rule.conditions) {
        if (auto* atom = std::get_if<AtomCondition>(&cond)) {
            auto sig = known.find(atom->predicate);
            for (std::size_t i = 0; i < atom->args.size(); ++i) {
                DslTerm& t = atom->args[i];
                if (t.form != DslTerm::Form::Symbol) continue;
                if (bound.contains(t.text)) {
                    t.form = DslTerm::Form::Var;
                } else if (sig != known.end() && (i >= sig->second.size() || sig->second[i] != Kind::Symbol)) {
                    unbound(t.text, rule);
                }
            }
        } else {
            auto& d = std::get<DisequalityCondition>(cond);
            if (!bound.contains(d.var)) unbound(d.var, rule);
            if (d.rhs.form == DslTerm::Form::Symbol) {
                if (!bound.contains(d.rhs.text)) unbound(d.rhs.text, rule);
                d.rhs.form = DslTerm::Form::Var;
            }
        }
    }
    for (const std::string& hole : message_holes(rule.message)) {
        if (!bound.contains(hole)) unbound(hole, rule);
    }
}

std::string print_term(const DslTerm& t) {
    return t.form == DslTerm::Form::Quoted ? quote(t.text) : t.text;
}

std::string ir_variable(const std::string& name, std::set<std::string>& taken) {
    std::string out = name;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    if (!std::isupper(static_cast<unsigned char>(out[0]))) out = "V" + out;
    while (!taken.insert(out).second) out += '_';
    return out;
}

[[noreturn]] void rule_error(ErrorCode code, const RuleAst& rule, const std::string& msg) {
    throw Error(code, "rule '" + rule.name + "': " + msg, rule.loc, {rule.name});
}

}  // namespace

Signatures base_signatures() {
    Signatures out;
    for (const PredicateSchema& p : Schema::base().predicates()) {
        std::vector<Kind> sorts;
        for (const ArgSort& a : p.args) sorts.push_back(a.kind);
        out.emplace(p.name, std::move(sorts));
    }
    return out;
}

bool RuleAst::same_as(const RuleAst& other) const {
    return name == other.name && title == other.title && bindings == other.bindings &&
           conditions == other.conditions && message == other.message;
}

bool Ruleset::same_as(const Ruleset& other) const {
    auto closure_eq = [](const ClosureDef& a, const ClosureDef& b) { return a.name == b.name && a.base == b.base; };
    auto rule_eq = [](const RuleAst& a, const RuleAst& b) { return a.same_as(b); };
    return std::equal(closures.begin(), closures.end(), other.closures.begin(), other.closures.end(), closure_eq) &&
           std::equal(rules.begin(), rules.end(), other.rules.begin(), other.rules.end(), rule_eq);
}

Ruleset parse_ruleset(std::string_view text, const Signatures& known, std::string_view file) {
    Ruleset rs = DslParser(lex(text, file)).ruleset();

    Signatures scope = known;
    std::set<std::string> relation_names;
    for (const ClosureDef& c : rs.closures) {
        if (!relation_names.insert(c.name).second) {
            throw Error(ErrorCode::DuplicateRelation, "relation '" + c.name + "' defined twice", c.loc, {c.name});
        }
        if (auto base = known.find(c.base); base != known.end()) scope[c.name] = base->second;
    }
    std::set<std::string> rule_names;
    for (RuleAst& rule : rs.rules) {
        if (!rule_names.insert(rule.name).second) {
            throw Error(ErrorCode::DuplicateRuleName, "rule '" + rule.name + "' defined twice", rule.loc, {rule.name});
        }
        resolve_terms(rule, scope);
    }
    return rs;
}

std::string print_ruleset(const Ruleset& ruleset) {
    std::string out;
    for (const ClosureDef& c : ruleset.closures) out += "relation " + c.name + " = closure(" + c.base + ")\n";
    for (const RuleAst& r : ruleset.rules) {
        if (!out.empty()) out += '\n';
        out += "rule " + r.name;
        if (r.title) out += ' ' + quote(*r.title);
        out += ":\n  forall ";
        for (std::size_t i = 0; i < r.bindings.size(); ++i) {
            if (i) out += ", ";
            out += r.bindings[i].var + ": " + std::string(kind_name(r.bindings[i].domain));
        }
        out += "\n  where ";
        for (std::size_t i = 0; i < r.conditions.size(); ++i) {
            if (i) out += ", ";
            if (const auto* atom = std::get_if<AtomCondition>(&r.conditions[i])) {
                if (atom->negated) out += "not ";
                out += atom->predicate + '(';
                for (std::size_t k = 0; k < atom->args.size(); ++k) {
                    if (k) out += ',';
                    out += print_term(atom->args[k]);
                }
                out += ')';
            } else {
                const auto& d = std::get<DisequalityCondition>(r.conditions[i]);
                out += d.var + " != " + print_term(d.rhs);
            }
        }
        out += "\n  report " + quote(r.message) + '\n';
    }
    return out;
}

std::vector<Clause> closure_clauses(const std::string& name, const std::string& base) {
    auto lit = [](const std::string& p, const char* a, const char* b) {
        return Literal{p, {Term::var(a), Term::var(b)}, false};
    };
    return {
        Clause{lit(name, "X", "Y"), {lit(base, "X", "Y")}},
        Clause{lit(name, "X", "Y"), {lit(base, "X", "Z"), lit(name, "Z", "Y")}},
    };
}

CompiledRules compile(const Ruleset& ruleset, const Program& context, const Signatures& known) {
    CompiledRules out;
    Signatures scope = known;

    for (const ClosureDef& c : ruleset.closures) {
        auto base = scope.find(c.base);
        if (base == scope.end()) {
            throw Error(ErrorCode::UnknownPredicateInRule,
                        "relation '" + c.name + "': unknown base relation '" + c.base + "'", c.loc, {c.base});
        }
        if (base->second.size() != 2) {
            throw Error(ErrorCode::ArityMismatchInRule,
                        "relation '" + c.name + "': closure needs a binary relation, '" + c.base + "' has arity " +
                            std::to_string(base->second.size()),
                        c.loc, {c.base});
        }
        if (base->second[0] != base->second[1]) {
            throw Error(ErrorCode::SortMismatch, "relation '" + c.name + "': '" + c.base + "' relates " +
                                                     std::string(kind_name(base->second[0])) + " to " +
                                                     std::string(kind_name(base->second[1])),
                        c.loc);
        }
        std::vector<Clause> clauses = closure_clauses(c.name, c.base);
        if (scope.contains(c.name) || out.program.derived.contains(c.name)) {
            std::vector<Clause> existing;
            for (const Clause& cl : context.clauses) {
                if (cl.head.predicate == c.name) existing.push_back(cl);
            }
            if (existing != clauses) {
                throw Error(ErrorCode::DuplicateRelation, "relation '" + c.name + "' is already defined", c.loc,
                            {c.name});
            }
            continue;
        }
        std::vector<Kind> sorts = base->second;
        scope.emplace(c.name, std::move(sorts));
        for (Clause& cl : clauses) out.program.add(std::move(cl));
    }

    for (const RuleAst& rule : ruleset.rules) {
        std::set<std::string> taken;
        std::map<std::string, std::pair<std::string, Kind>> vars;  // dsl name -> (ir name, domain)
        RuleSpec spec;
        spec.id = rule.name;
        spec.title = rule.title.value_or("");
        spec.message = rule.message;
        spec.head_predicate = "violate_" + rule.name;

        Clause clause;
        clause.head.predicate = spec.head_predicate;
        for (const Binding& b : rule.bindings) {
            std::string ir = ir_variable(b.var, taken);
            vars.emplace(b.var, std::make_pair(ir, b.domain));
            spec.variables.push_back(b.var);
            clause.head.args.push_back(Term::var(ir));
            const char* domain_pred = b.domain == Kind::Class      ? "class"
                                      : b.domain == Kind::Function ? "is_function"
                                                                   : "is_data_member";
            if (!scope.contains(domain_pred)) {
                rule_error(ErrorCode::UnknownPredicateInRule, rule,
                           std::string("domain predicate '") + domain_pred + "' is not defined");
            }
            clause.body.emplace_back(Literal{domain_pred, {Term::var(ir)}, false});
        }

        for (const Condition& cond : rule.conditions) {
            if (const auto* atom = std::get_if<AtomCondition>(&cond)) {
                auto sig = scope.find(atom->predicate);
                if (sig == scope.end()) {
                    rule_error(ErrorCode::UnknownPredicateInRule, rule, "unknown predicate '" + atom->predicate + "'");
                }
                if (sig->second.size() != atom->args.size()) {
                    rule_error(ErrorCode::ArityMismatchInRule, rule,
                               "'" + atom->predicate + "' expects " + std::to_string(sig->second.size()) +
                                   " arguments, got " + std::to_string(atom->args.size()));
                }
                Literal lit{atom->predicate, {}, atom->negated};
                for (std::size_t i = 0; i < atom->args.size(); ++i) {
                    const DslTerm& t = atom->args[i];
                    Kind sort = sig->second[i];
                    if (t.form == DslTerm::Form::Var) {
                        const auto& [ir, domain] = vars.at(t.text);
                        if (domain != sort) {
                            rule_error(ErrorCode::SortMismatch, rule,
                                       "variable '" + t.text + "' ranges over " + std::string(kind_name(domain)) +
                                           " but argument " + std::to_string(i + 1) + " of '" + atom->predicate +
                                           "' is a " + std::string(kind_name(sort)));
                        }
                        lit.args.push_back(Term::var(ir));
                    } else if (t.form == DslTerm::Form::Symbol && sort != Kind::Symbol) {
                        unbound(t.text, rule);
                    } else {
                        lit.args.push_back(Term::constant(sort, t.text));
                    }
                }
                clause.body.emplace_back(std::move(lit));
            } else {
                const auto& d = std::get<DisequalityCondition>(cond);
                const auto& [lhs, domain] = vars.at(d.var);
                Term rhs = d.rhs.form == DslTerm::Form::Var ? Term::var(vars.at(d.rhs.text).first)
                                                            : Term::constant(domain, d.rhs.text);
                clause.body.emplace_back(Disequality{Term::var(lhs), std::move(rhs)});
            }
        }

        if (auto var = check_safety(clause)) {
            rule_error(ErrorCode::UnsafeVariable, rule, "variable " + *var + " is not range restricted");
        }
        if (scope.contains(spec.head_predicate) || out.program.derived.contains(spec.head_predicate)) {
            rule_error(ErrorCode::DuplicateRuleName, rule, "predicate '" + spec.head_predicate + "' already exists");
        }
        spec.clauses.push_back(clause);
        out.program.add(std::move(clause));
        out.rules.push_back(std::move(spec));
    }

    Program whole = context;
    whole.append(out.program);
    try {
        stratify(whole);
    } catch (const Error& e) {
        throw Error(e.code(), std::string("rules cannot be stratified: ") + e.what(), e.loc(), e.details());
    }
    return out;
}

std::vector<std::string> message_holes(std::string_view message) {
    std::vector<std::string> holes;
    for (std::size_t i = 0; i < message.size(); ++i) {
        if (message[i] == '{') {
            if (i + 1 < message.size() && message[i + 1] == '{') {
                ++i;
                continue;
            }
            std::size_t end = message.find('}', i);
            if (end == std::string_view::npos) end = message.size();
            holes.emplace_back(message.substr(i + 1, end - i - 1));
            i = end;
        } else if (message[i] == '}' && i + 1 < message.size() && message[i + 1] == '}') {
            ++i;
        }
    }
    return holes;
}

std::string format_message(std::string_view message, const std::map<std::string, std::string>& witness) {
    std::string out;
    for (std::size_t i = 0; i < message.size(); ++i) {
        char c = message[i];
        if (c == '{' && i + 1 < message.size() && message[i + 1] == '{') {
            out.push_back('{');
            ++i;
        } else if (c == '}' && i + 1 < message.size() && message[i + 1] == '}') {
            out.push_back('}');
            ++i;
        } else if (c == '{') {
            std::size_t end = message.find('}', i);
            std::string hole(message.substr(i + 1, (end == std::string_view::npos ? message.size() : end) - i - 1));
            auto it = witness.find(hole);
            if (end == std::string_view::npos || it == witness.end()) {
                throw Error(ErrorCode::UnknownHole, "message hole '{" + hole + "}' has no witness", std::nullopt,
                            {hole});
            }
            out += it->second;
            i = end;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace strucheck
