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

#include <array>
#include <cctype>
#include <unordered_set>

#include "strucheck/cpp_extractor.hpp"

namespace strucheck {

namespace {

const std::unordered_set<std::string_view>& keywords() {
    static const std::unordered_set<std::string_view> set = {
        "alignas",  "alignof",   "auto",     "bool",      "char",         "char16_t",  "char32_t",
        "char8_t",  "class",     "const",    "constexpr", "consteval",    "constinit", "decltype",
        "default",  "delete",    "double",   "enum",      "explicit",     "extern",    "float",
        "friend",   "inline",    "int",      "long",      "mutable",      "noexcept",  "operator",
        "private",  "protected", "public",   "short",     "signed",       "static",    "static_assert",
        "struct",   "template",  "typedef",  "typename",  "union",        "unsigned",  "using",
        "virtual",  "void",      "volatile", "wchar_t",   "namespace",
    };
    return set;
}

// Longest match first.
constexpr std::array<std::string_view, 20> kMultiCharPuncts = {
    "...", "::", "->", "==", "!=", "<=", ">=", "&&", "||", "++",
    "--",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##",
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    Lexer(std::string_view src, std::string_view file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) break;
            out.push_back(next());
        }
        return out;
    }

private:
    SourceLoc here() const { return SourceLoc{std::string(file_), line_, col_}; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            } else if (starts_with("//")) {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (starts_with("/*")) {
                SourceLoc start = here();
                advance();
                advance();
                while (pos_ < src_.size() && !starts_with("*/")) advance();
                if (pos_ >= src_.size()) throw Error(ErrorCode::LexError, "unterminated comment", start);
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        SourceLoc loc = here();
        char c = src_[pos_];
        std::size_t start = pos_;
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
            std::string text(src_.substr(start, pos_ - start));
            TokenKind kind = keywords().contains(text) ? TokenKind::Keyword : TokenKind::Identifier;
            return Token{kind, std::move(text), std::move(loc)};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && (is_ident_char(src_[pos_]) || src_[pos_] == '.' || src_[pos_] == '\'')) {
                advance();
            }
            return Token{TokenKind::Number, std::string(src_.substr(start, pos_ - start)), std::move(loc)};
        }
        if (c == '"' || c == '\'') {
            advance();
            while (true) {
                if (pos_ >= src_.size() || src_[pos_] == '\n') {
                    throw Error(ErrorCode::LexError,
                                c == '"' ? "unterminated string literal" : "unterminated character literal", loc);
                }
                char d = src_[pos_];
                advance();
                if (d == '\\' && pos_ < src_.size()) {
                    advance();
                } else if (d == c) {
                    break;
                }
            }
            return Token{TokenKind::String, std::string(src_.substr(start, pos_ - start)), std::move(loc)};
        }
        for (std::string_view p : kMultiCharPuncts) {
            if (starts_with(p)) {
                for (std::size_t i = 0; i < p.size(); ++i) advance();
                return Token{TokenKind::Punct, std::string(p), std::move(loc)};
            }
        }
        advance();
        return Token{TokenKind::Punct, std::string(1, c), std::move(loc)};
    }

    std::string_view src_;
    std::string_view file_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, std::string_view file) { return Lexer(source, file).run(); }

}  // namespace strucheck
