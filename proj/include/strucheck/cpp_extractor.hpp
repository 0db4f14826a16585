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

#ifndef STRUCHECK_CPP_EXTRACTOR_HPP
#define STRUCHECK_CPP_EXTRACTOR_HPP

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strucheck/fact_model.hpp"

namespace strucheck {

enum class TokenKind {
    Identifier,
    Keyword,
    Number,
    String,
    Punct,  // operators and punctuation, text holds the spelling
};

struct Token {
    TokenKind kind;
    std::string text;
    SourceLoc loc;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

/// Drops whitespace and comments. Throws LexError on unterminated comments,
/// strings and character literals.
std::vector<Token> tokenize(std::string_view source, std::string_view file = "<input>");

enum class Access { Public, Protected, Private };
std::string_view access_name(Access access);

struct BaseSpecifier {
    std::string name;
    bool is_virtual = false;
    Access access = Access::Private;
    bool explicit_access = false;
    SourceLoc loc;
};

struct FunctionDecl {
    std::string name;  // `f`, `~A`, `operator==`
    std::vector<std::string> param_types;
    bool is_const = false;
    bool is_virtual = false;
    bool is_pure = false;
    bool is_override = false;
    bool is_constructor = false;
    bool is_destructor = false;
    Access access = Access::Private;
    SourceLoc loc;

    /// `(int,const char*)`, with a `const` suffix for const member functions.
    std::string signature() const;
};

struct DataMemberDecl {
    std::string name;
    Access access = Access::Private;
    SourceLoc loc;
};

struct ClassDecl {
    std::string name;
    bool is_struct = false;
    std::vector<BaseSpecifier> bases;
    std::vector<FunctionDecl> functions;
    std::vector<DataMemberDecl> data_members;
    SourceLoc loc;

    /// Equality of everything except source locations.
    bool same_definition(const ClassDecl& other) const;
};

/// Receives `file:line:col: warning: message` lines.
using DiagnosticSink = std::function<void(const std::string&)>;

/// Parses the accepted class-declaration subset. Unknown member constructs
/// (nested types, friends, typedefs, using, templates, enums) are skipped and
/// reported through `warn`. Throws SyntaxError.
std::vector<ClassDecl> parse(const std::vector<Token>& tokens, const DiagnosticSink& warn = {});

/// Facts of one file. Base classes are interned even when defined elsewhere;
/// resolution is checked by `extract_project`. Throws DuplicateClass.
FactBase extract(const std::vector<ClassDecl>& decls, std::string_view file);

struct SourceFile {
    std::string name;
    std::string text;
};

/// Tokenizes, parses and extracts every file, merges the results, checks that
/// every base resolves and that inheritance is acyclic, and freezes the result.
/// Throws UnresolvedBase, InheritanceCycle, DuplicateClass and anything the
/// earlier stages throw.
FactBase extract_project(const std::vector<SourceFile>& files, const DiagnosticSink& warn = {});

}  // namespace strucheck

#endif  // STRUCHECK_CPP_EXTRACTOR_HPP
