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
#include <unordered_set>

#include "strucheck/cpp_extractor.hpp"

namespace strucheck {

namespace {

bool is_wordlike(const Token& t) {
    return t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword || t.kind == TokenKind::Number;
}

// Token spellings joined without whitespace, except for a single space between
// two adjacent words: `const char*`, `std::string const&`.
std::string join_tokens(std::vector<Token>::const_iterator first, std::vector<Token>::const_iterator last) {
    std::string out;
    const Token* prev = nullptr;
    for (auto it = first; it != last; ++it) {
        if (prev && is_wordlike(*prev) && is_wordlike(*it)) out.push_back(' ');
        out += it->text;
        prev = &*it;
    }
    return out;
}

// Type of one parameter: default argument and declarator name removed.
std::string normalize_param(std::vector<Token> tokens) {
    int depth = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.is_punct("(") || t.is_punct("<") || t.is_punct("[") || t.is_punct("{")) ++depth;
        if (t.is_punct(")") || t.is_punct(">") || t.is_punct("]") || t.is_punct("}")) --depth;
        if (depth == 0 && t.is_punct("=")) {
            tokens.resize(i);
            break;
        }
    }
    // `int a[]`: the name sits right before the first bracket.
    auto bracket = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_punct("["); });
    if (bracket != tokens.begin() && bracket != tokens.end() && tokens.size() >= 2) {
        auto name = bracket - 1;
        if (name->kind == TokenKind::Identifier && name != tokens.begin()) tokens.erase(name);
    } else if (tokens.size() >= 2 && tokens.back().kind == TokenKind::Identifier &&
               !tokens[tokens.size() - 2].is_punct("::")) {
        // Only a name if something before it already spells a type: `const A`
        // is a type, `const A a` and `int a` carry a name.
        static const std::unordered_set<std::string_view> qualifiers = {
            "const", "volatile", "struct", "class", "enum", "union", "typename",
        };
        bool has_type = std::any_of(tokens.begin(), tokens.end() - 1, [](const Token& t) {
            return t.kind == TokenKind::Identifier || (t.kind == TokenKind::Keyword && !qualifiers.contains(t.text));
        });
        if (has_type) tokens.pop_back();
    }
    return join_tokens(tokens.begin(), tokens.end());
}

class Parser {
public:
    Parser(const std::vector<Token>& tokens, const DiagnosticSink& warn) : toks_(tokens), warn_(warn) {}

    std::vector<ClassDecl> program() {
        std::vector<ClassDecl> out;
        while (!eof()) {
            const Token& t = peek();
            if (t.is_punct("#")) {
                warning(t.loc, "preprocessor directive ignored");
                std::uint32_t line = t.loc.line;
                while (!eof() && peek().loc.line == line) ++pos_;
            } else if (t.is_punct(";")) {
                ++pos_;
            } else if (t.is_keyword("class") || t.is_keyword("struct")) {
                if (auto decl = class_def()) out.push_back(std::move(*decl));
            } else {
                fail(t.loc, "expected 'class' or 'struct', found '" + t.text + "'");
            }
        }
        return out;
    }

private:
    bool eof() const { return pos_ >= toks_.size(); }

    const Token& peek(std::size_t ahead = 0) const {
        static const Token end{TokenKind::Punct, "<end of input>", SourceLoc{}};
        if (pos_ + ahead >= toks_.size()) {
            if (toks_.empty()) return end;
            return toks_.back();
        }
        return toks_[pos_ + ahead];
    }

    SourceLoc loc_here() const {
        if (eof()) return toks_.empty() ? SourceLoc{} : toks_.back().loc;
        return peek().loc;
    }

    [[noreturn]] void fail(const SourceLoc& loc, const std::string& msg) const {
        throw Error(ErrorCode::SyntaxError, msg, loc);
    }

    void warning(const SourceLoc& loc, const std::string& msg) const {
        if (warn_) {
            warn_(loc.file + ':' + std::to_string(loc.line) + ':' + std::to_string(loc.column) +
                  ": warning: " + msg);
        }
    }

    const Token& expect_punct(std::string_view p) {
        if (eof() || !peek().is_punct(p)) {
            fail(loc_here(), "expected '" + std::string(p) + "'" +
                                 (eof() ? std::string(" at end of input") : ", found '" + peek().text + "'"));
        }
        return toks_[pos_++];
    }

    const Token& expect_identifier(std::string_view what) {
        if (eof() || peek().kind != TokenKind::Identifier) {
            fail(loc_here(), "expected " + std::string(what) +
                                 (eof() ? std::string(" at end of input") : ", found '" + peek().text + "'"));
        }
        return toks_[pos_++];
    }

    // Skips a balanced (), [] or {} group starting at the current opener.
    void skip_group() {
        SourceLoc start = peek().loc;
        std::vector<char> stack;
        do {
            if (eof()) fail(start, "unbalanced '" + toks_[pos_ - 1].text + "'");
            const Token& t = toks_[pos_++];
            if (t.kind != TokenKind::Punct || t.text.size() != 1) continue;
            char c = t.text[0];
            if (c == '(' || c == '[' || c == '{') {
                stack.push_back(c);
            } else if (c == ')' || c == ']' || c == '}') {
                char open = c == ')' ? '(' : c == ']' ? '[' : '{';
                if (stack.empty() || stack.back() != open) fail(t.loc, "unbalanced '" + t.text + "'");
                stack.pop_back();
            }
        } while (!stack.empty());
    }

    bool at_opener() const {
        return !eof() && (peek().is_punct("(") || peek().is_punct("[") || peek().is_punct("{"));
    }

    std::optional<ClassDecl> class_def() {
        ClassDecl decl;
        decl.is_struct = toks_[pos_++].text == "struct";
        const Token& name = expect_identifier("class name");
        decl.name = name.text;
        decl.loc = name.loc;
        if (!eof() && peek().is_punct(";")) {
            ++pos_;
            return std::nullopt;  // forward declaration
        }
        if (!eof() && peek().is(TokenKind::Identifier, "final")) ++pos_;
        if (!eof() && peek().is_punct(":")) {
            ++pos_;
            decl.bases.push_back(base_specifier(decl.is_struct));
            while (!eof() && peek().is_punct(",")) {
                ++pos_;
                decl.bases.push_back(base_specifier(decl.is_struct));
            }
        }
        expect_punct("{");
        Access access = decl.is_struct ? Access::Public : Access::Private;
        while (!eof() && !peek().is_punct("}")) member(decl, access);
        expect_punct("}");
        expect_punct(";");
        return decl;
    }

    BaseSpecifier base_specifier(bool in_struct) {
        BaseSpecifier base;
        base.access = in_struct ? Access::Public : Access::Private;
        bool seen_virtual = false;
        bool seen_access = false;
        while (!eof() && peek().kind == TokenKind::Keyword) {
            const Token& t = peek();
            if (t.text == "virtual" && !seen_virtual) {
                seen_virtual = true;
            } else if (auto a = access_keyword(t); a && !seen_access) {
                seen_access = true;
                base.access = *a;
            } else {
                break;
            }
            ++pos_;
        }
        base.is_virtual = seen_virtual;
        base.explicit_access = seen_access;
        const Token& name = expect_identifier("base class name");
        base.name = name.text;
        base.loc = name.loc;
        if (!eof() && peek().is_punct("::")) fail(peek().loc, "qualified base class names are not supported");
        if (!eof() && peek().is_punct("<")) fail(peek().loc, "templates are not supported");
        return base;
    }

    static std::optional<Access> access_keyword(const Token& t) {
        if (t.is_keyword("public")) return Access::Public;
        if (t.is_keyword("protected")) return Access::Protected;
        if (t.is_keyword("private")) return Access::Private;
        return std::nullopt;
    }

    void member(ClassDecl& decl, Access& access) {
        const Token& t = peek();
        if (auto a = access_keyword(t)) {
            ++pos_;
            expect_punct(":");
            access = *a;
            return;
        }
        if (t.is_punct(";")) {
            ++pos_;
            return;
        }
        static const std::unordered_set<std::string_view> skipped = {
            "class", "struct", "union", "enum", "friend", "typedef", "using", "template", "static_assert",
        };
        if (t.kind == TokenKind::Keyword && skipped.contains(t.text)) {
            skip_member(t.text == "class" || t.text == "struct" || t.text == "union" || t.text == "enum");
            warning(t.loc, "'" + t.text + "' member ignored");
            return;
        }
        declaration(decl, access);
    }

    // Skips to the end of an unsupported member.
    void skip_member(bool type_definition) {
        std::size_t start = pos_;
        while (!eof()) {
            if (peek().is_punct(";")) {
                ++pos_;
                return;
            }
            if (peek().is_punct("}")) {
                if (pos_ == start) fail(peek().loc, "unexpected '}'");
                return;
            }
            if (peek().is_punct("{")) {
                skip_group();
                if (!type_definition) {
                    if (!eof() && peek().is_punct(";")) ++pos_;
                    return;
                }
                continue;
            }
            if (at_opener()) {
                skip_group();
                continue;
            }
            ++pos_;
        }
        fail(loc_here(), "unexpected end of input inside class body");
    }

    // Index of the first top-level '(' of the declaration starting at pos_,
    // if it precedes the declaration's terminator.
    std::optional<std::size_t> find_call_paren() const {
        int angle = 0;
        for (std::size_t i = pos_; i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            if (t.is_keyword("operator")) {
                // The operator's own spelling may contain '=', '<' or '('.
                std::size_t j = i + 1;
                if (j < toks_.size() && toks_[j].is_punct("(")) return j;
                while (j < toks_.size() && !toks_[j].is_punct("(") && !toks_[j].is_punct(";")) ++j;
                if (j < toks_.size() && toks_[j].is_punct("(")) return j;
                return std::nullopt;
            }
            if (t.is_punct(";") || t.is_punct("{") || t.is_punct("}") || t.is_punct("=")) return std::nullopt;
            if (t.is_punct("<")) ++angle;
            if (t.is_punct(">") && angle > 0) --angle;
            if (t.is_punct("(") && angle == 0) return i;
        }
        return std::nullopt;
    }

    void declaration(ClassDecl& decl, Access access) {
        if (auto paren = find_call_paren()) {
            function_decl(decl, access, *paren);
        } else {
            data_decl(decl, access);
        }
    }

    void function_decl(ClassDecl& decl, Access access, std::size_t paren) {
        const std::size_t start = pos_;
        FunctionDecl fn;
        fn.access = access;

        auto op = std::find_if(toks_.begin() + start, toks_.begin() + paren,
                               [](const Token& t) { return t.is_keyword("operator"); });
        if (op != toks_.begin() + paren) {
            fn.loc = op->loc;
            if (op + 1 == toks_.begin() + paren && paren + 1 < toks_.size() && toks_[paren + 1].is_punct(")")) {
                fn.name = "operator()";
                paren += 2;
                if (paren >= toks_.size() || !toks_[paren].is_punct("(")) {
                    fail(toks_[paren - 1].loc, "expected parameter list after 'operator()'");
                }
            } else {
                fn.name = join_tokens(op, toks_.begin() + paren);
            }
        } else {
            if (paren == start) fail(toks_[paren].loc, "expected a member declaration");
            const Token& before = toks_[paren - 1];
            const bool pointer_declarator = paren + 1 < toks_.size() &&
                                            (toks_[paren + 1].is_punct("*") || toks_[paren + 1].is_punct("&"));
            if (before.kind != TokenKind::Identifier || pointer_declarator) {
                SourceLoc loc = toks_[start].loc;
                skip_member(false);
                warning(loc, "unsupported member declaration ignored");
                return;
            }
            fn.name = before.text;
            fn.loc = before.loc;
            if (paren - 1 > start && toks_[paren - 2].is_punct("~")) {
                fn.is_destructor = true;
                fn.name = "~" + fn.name;
                fn.loc = toks_[paren - 2].loc;
            } else if (fn.name == decl.name) {
                fn.is_constructor = true;
            }
        }
        for (std::size_t i = start; i < paren; ++i) {
            if (toks_[i].is_keyword("virtual")) fn.is_virtual = true;
        }

        pos_ = paren;
        fn.param_types = parameters();
        qualifiers_and_body(fn);
        decl.functions.push_back(std::move(fn));
    }

    std::vector<std::string> parameters() {
        std::size_t open = pos_;
        skip_group();
        std::size_t close = pos_ - 1;
        std::vector<std::string> params;
        std::vector<Token> current;
        int depth = 0;
        for (std::size_t i = open + 1; i < close; ++i) {
            const Token& t = toks_[i];
            if (t.is_punct("(") || t.is_punct("<") || t.is_punct("[") || t.is_punct("{")) ++depth;
            if (t.is_punct(")") || t.is_punct(">") || t.is_punct("]") || t.is_punct("}")) --depth;
            if (depth == 0 && t.is_punct(",")) {
                params.push_back(normalize_param(std::move(current)));
                current.clear();
            } else {
                current.push_back(t);
            }
        }
        if (!current.empty()) params.push_back(normalize_param(std::move(current)));
        if (params.size() == 1 && params[0] == "void") params.clear();
        return params;
    }

    void qualifiers_and_body(FunctionDecl& fn) {
        while (!eof()) {
            const Token& t = peek();
            if (t.is_punct(";")) {
                ++pos_;
                return;
            }
            if (t.is_punct("{")) {
                skip_group();
                if (!eof() && peek().is_punct(";")) ++pos_;
                return;
            }
            if (t.is_punct("}")) fail(t.loc, "expected ';' after member function declaration");
            if (t.is_keyword("const")) {
                fn.is_const = true;
                ++pos_;
            } else if (t.is(TokenKind::Identifier, "override")) {
                fn.is_override = true;
                ++pos_;
            } else if (t.is_punct("=")) {
                ++pos_;
                if (!eof() && peek().is(TokenKind::Number, "0")) {
                    fn.is_pure = true;
                    ++pos_;
                } else if (!eof() && (peek().is_keyword("default") || peek().is_keyword("delete"))) {
                    ++pos_;
                } else {
                    fail(loc_here(), "expected '0', 'default' or 'delete' after '='");
                }
            } else if (t.is_punct(":")) {
                ++pos_;
                initializer_list();
            } else if (at_opener()) {
                skip_group();  // noexcept(...), attributes
            } else {
                ++pos_;  // final, noexcept, trailing return types
            }
        }
        fail(loc_here(), "unexpected end of input in member function declaration");
    }

    // `: a(1), b{2}, Base(x)` up to, not including, the body.
    void initializer_list() {
        while (true) {
            if (eof()) fail(loc_here(), "unexpected end of input in constructor initializer list");
            while (!eof() && !at_opener()) ++pos_;
            if (eof()) fail(loc_here(), "unexpected end of input in constructor initializer list");
            skip_group();
            if (!eof() && peek().is_punct(",")) {
                ++pos_;
                continue;
            }
            if (eof() || !peek().is_punct("{")) fail(loc_here(), "expected constructor body");
            return;
        }
    }

    void data_decl(ClassDecl& decl, Access access) {
        std::vector<std::vector<Token>> declarators(1);
        int depth = 0;
        int angle = 0;
        bool in_init = false;
        while (true) {
            if (eof()) fail(loc_here(), "expected ';' after member declaration");
            const Token& t = peek();
            if (depth == 0 && t.is_punct(";")) {
                ++pos_;
                break;
            }
            if (depth == 0 && t.is_punct("}")) fail(t.loc, "expected ';' after member declaration");
            if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{")) ++depth;
            if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}")) --depth;
            if (!in_init && t.is_punct("<")) ++angle;
            if (!in_init && t.is_punct(">") && angle > 0) --angle;
            if (depth == 0 && t.is_punct("=")) in_init = true;
            if (depth == 0 && angle == 0 && t.is_punct(",")) {
                declarators.emplace_back();
                in_init = false;
            } else {
                declarators.back().push_back(t);
            }
            ++pos_;
        }
        for (const auto& d : declarators) {
            const Token* name = nullptr;
            for (const Token& t : d) {
                if (t.is_punct("=") || t.is_punct("[") || t.is_punct("{") || t.is_punct(":")) break;
                if (t.kind == TokenKind::Identifier) name = &t;
            }
            if (!name) {
                warning(d.empty() ? loc_here() : d.front().loc, "member declaration without a name ignored");
                continue;
            }
            decl.data_members.push_back(DataMemberDecl{name->text, access, name->loc});
        }
    }

    const std::vector<Token>& toks_;
    const DiagnosticSink& warn_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string_view access_name(Access access) {
    switch (access) {
    case Access::Public: return "public";
    case Access::Protected: return "protected";
    case Access::Private: return "private";
    }
    return "private";
}

std::string FunctionDecl::signature() const {
    std::string out = "(";
    for (std::size_t i = 0; i < param_types.size(); ++i) {
        if (i) out += ',';
        out += param_types[i];
    }
    out += ')';
    if (is_const) out += "const";
    return out;
}

bool ClassDecl::same_definition(const ClassDecl& other) const {
    auto bases_equal = [](const BaseSpecifier& a, const BaseSpecifier& b) {
        return a.name == b.name && a.is_virtual == b.is_virtual && a.access == b.access;
    };
    auto functions_equal = [](const FunctionDecl& a, const FunctionDecl& b) {
        return a.name == b.name && a.param_types == b.param_types && a.is_const == b.is_const &&
               a.is_virtual == b.is_virtual && a.is_pure == b.is_pure && a.is_override == b.is_override &&
               a.is_constructor == b.is_constructor && a.is_destructor == b.is_destructor && a.access == b.access;
    };
    auto members_equal = [](const DataMemberDecl& a, const DataMemberDecl& b) {
        return a.name == b.name && a.access == b.access;
    };
    return name == other.name && is_struct == other.is_struct &&
           std::equal(bases.begin(), bases.end(), other.bases.begin(), other.bases.end(), bases_equal) &&
           std::equal(functions.begin(), functions.end(), other.functions.begin(), other.functions.end(),
                      functions_equal) &&
           std::equal(data_members.begin(), data_members.end(), other.data_members.begin(),
                      other.data_members.end(), members_equal);
}

std::vector<ClassDecl> parse(const std::vector<Token>& tokens, const DiagnosticSink& warn) {
    return Parser(tokens, warn).program();
}

}  // namespace strucheck
