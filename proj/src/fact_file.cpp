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
#include <cctype>
#include <charconv>
#include <variant>

#include "strucheck/fact_model.hpp"

namespace strucheck {

namespace {

constexpr std::string_view kHeader = "% strucheck facts v1\n";

std::string render_arg(const Entity& e) {
    if (e.kind == Kind::Symbol && is_bare_symbol(e.qualified_name)) return e.qualified_name;
    return quote(e.qualified_name);
}

std::string render_entity(const Entity& e) {
    std::string line = "entity(";
    line += kind_name(e.kind);
    line += ',';
    line += quote(e.qualified_name);
    line += ',';
    if (e.loc) {
        line += quote(e.loc->file) + ',' + std::to_string(e.loc->line) + ',' + std::to_string(e.loc->column);
    } else {
        line += "-,0,0";
    }
    line += ").";
    return line;
}

std::string render_fact(std::string_view predicate, const std::vector<std::string>& args) {
    std::string out(predicate);
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    return out + ").";
}

// One argument of a fact-file line, as written.
struct RawArg {
    enum class Form { Quoted, Bare, Dash, Number } form;
    std::string text;
    std::uint32_t number = 0;
};

struct RawLine {
    std::uint32_t line_no;
    std::string predicate;
    std::vector<RawArg> args;
};

class LineParser {
public:
    LineParser(std::string_view text, std::string_view source, std::uint32_t line_no)
        : text_(text), source_(source), line_no_(line_no) {}

    RawLine parse() {
        RawLine out{line_no_, {}, {}};
        skip_ws();
        out.predicate = identifier();
        if (out.predicate.empty()) fail("expected predicate name");
        expect('(');
        skip_ws();
        if (peek() != ')') {
            out.args.push_back(argument());
            skip_ws();
            while (peek() == ',') {
                ++pos_;
                out.args.push_back(argument());
                skip_ws();
            }
        }
        expect(')');
        expect('.');
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing text");
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::ParseError, what,
                    SourceLoc{std::string(source_), line_no_, static_cast<std::uint32_t>(pos_ + 1)});
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    RawArg argument() {
        skip_ws();
        char c = peek();
        if (c == '"') return RawArg{RawArg::Form::Quoted, quoted()};
        if (c == '-') {
            ++pos_;
            return RawArg{RawArg::Form::Dash, "-"};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = identifier();
            std::uint32_t value = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc{} || ptr != digits.data() + digits.size()) fail("malformed number '" + digits + "'");
            return RawArg{RawArg::Form::Number, digits, value};
        }
        std::string ident = identifier();
        if (ident.empty()) fail("expected argument");
        return RawArg{RawArg::Form::Bare, ident};
    }

    std::string quoted() {
        ++pos_;
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail("unterminated string");
            char c = text_[pos_++];
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("unterminated string");
                out.push_back(text_[pos_++]);
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

    std::string_view text_;
    std::string_view source_;
    std::uint32_t line_no_;
    std::size_t pos_ = 0;
};

SourceLoc line_loc(std::string_view source, std::uint32_t line_no) {
    return SourceLoc{std::string(source), line_no, 1};
}

void declare_entity(FactBase& fb, const RawLine& raw, std::string_view source) {
    auto bad = [&](const std::string& what) {
        throw Error(ErrorCode::ParseError, "entity declaration: " + what, line_loc(source, raw.line_no));
    };
    if (raw.args.size() != 5) bad("expected 5 fields");
    const RawArg& kind_arg = raw.args[0];
    auto kind = parse_kind(kind_arg.text);
    if (kind_arg.form != RawArg::Form::Bare || !kind || *kind == Kind::Symbol) {
        bad("unknown entity kind '" + kind_arg.text + "'");
    }
    if (raw.args[1].form != RawArg::Form::Quoted || raw.args[1].text.empty()) bad("expected quoted qualified name");
    const RawArg& file = raw.args[2];
    const RawArg& line = raw.args[3];
    const RawArg& col = raw.args[4];
    if (line.form != RawArg::Form::Number || col.form != RawArg::Form::Number) bad("expected line and column");
    std::optional<SourceLoc> loc;
    if (file.form == RawArg::Form::Dash) {
        if (line.number != 0 || col.number != 0) bad("unknown location must be -,0,0");
    } else if (file.form == RawArg::Form::Quoted) {
        if (line.number < 1 || col.number < 1) bad("line and column must be positive");
        loc = SourceLoc{file.text, line.number, col.number};
    } else {
        bad("expected quoted file name or '-'");
    }
    fb.intern(*kind, raw.args[1].text, std::move(loc));
}

void add_fact(FactBase& fb, const RawLine& raw, std::string_view source) {
    const PredicateSchema* schema = Schema::base().find(raw.predicate);
    SourceLoc loc = line_loc(source, raw.line_no);
    if (!schema) throw Error(ErrorCode::UnknownPredicate, "unknown predicate '" + raw.predicate + "'", loc);
    if (raw.args.size() != schema->arity()) {
        throw Error(ErrorCode::ArityMismatch,
                    raw.predicate + " expects " + std::to_string(schema->arity()) + " arguments", loc);
    }
    Tuple args;
    for (std::size_t i = 0; i < raw.args.size(); ++i) {
        const RawArg& arg = raw.args[i];
        Kind kind = schema->args[i].kind;
        bool ok = arg.form == RawArg::Form::Quoted || (kind == Kind::Symbol && arg.form == RawArg::Form::Bare);
        if (!ok || arg.text.empty()) {
            throw Error(ErrorCode::SortMismatch,
                        raw.predicate + ": argument " + std::to_string(i + 1) + " must be a " +
                            (kind == Kind::Symbol ? std::string("symbol") : "quoted " + std::string(kind_name(kind)) + " name"),
                        loc);
        }
        args.push_back(fb.intern(kind, arg.text));
    }
    try {
        fb.assert_fact(raw.predicate, args);
    } catch (const Error& e) {
        throw Error(e.code(), e.what(), loc);
    }
}

}  // namespace

std::string quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

bool is_bare_symbol(std::string_view text) {
    if (text.empty()) return false;
    if (!(std::islower(static_cast<unsigned char>(text[0])) || text[0] == '_')) return false;
    return std::all_of(text.begin(), text.end(), [](char c) {
        return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::string write_fact_file(const FactBase& fb) {
    std::string out(kHeader);

    std::vector<std::string> entity_lines;
    for (const Entity& e : fb.entities()) {
        if (e.kind != Kind::Symbol) entity_lines.push_back(render_entity(e));
    }
    std::sort(entity_lines.begin(), entity_lines.end());
    for (const auto& line : entity_lines) out += line + '\n';

    for (const PredicateSchema& p : Schema::base().predicates()) {
        std::vector<std::vector<std::string>> rows;
        for (const Tuple& t : fb.extension(p.name)) {
            std::vector<std::string> row;
            for (EntityId id : t) row.push_back(render_arg(fb.entity(id)));
            rows.push_back(std::move(row));
        }
        std::sort(rows.begin(), rows.end());
        for (const auto& row : rows) out += render_fact(p.name, row) + '\n';
    }
    return out;
}

std::string format_fact(const FactBase& fb, std::string_view predicate, const Tuple& args) {
    std::vector<std::string> row;
    for (EntityId id : args) row.push_back(render_arg(fb.entity(id)));
    return render_fact(predicate, row);
}

FactBase read_fact_file(std::string_view text, std::string_view source_name) {
    std::vector<RawLine> entities;
    std::vector<RawLine> facts;
    std::uint32_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '%') continue;
        RawLine raw = LineParser(line, source_name, line_no).parse();
        (raw.predicate == "entity" ? entities : facts).push_back(std::move(raw));
    }

    FactBase fb;
    for (const RawLine& raw : entities) declare_entity(fb, raw, source_name);
    for (const RawLine& raw : facts) add_fact(fb, raw, source_name);
    return fb;
}

}  // namespace strucheck
