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

#ifndef STRUCHECK_ERROR_HPP
#define STRUCHECK_ERROR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strucheck {

/// Position of a declaration or token in some input text.
struct SourceLoc {
    std::string file;
    std::uint32_t line = 1;
    std::uint32_t column = 1;

    friend auto operator<=>(const SourceLoc&, const SourceLoc&) = default;
};

enum class ErrorCode {
    // fact model / fact files
    UnknownPredicate,
    ArityMismatch,
    SortMismatch,
    ParseError,
    // extractor
    LexError,
    SyntaxError,
    DuplicateClass,
    UnresolvedBase,
    InheritanceCycle,
    // engine
    InvalidClause,
    CyclicNegation,
    UnsafeVariable,
    // rule language
    DslSyntaxError,
    DuplicateRuleName,
    DuplicateRelation,
    UnboundVariable,
    UnknownPredicateInRule,
    ArityMismatchInRule,
    UnknownHole,
    // catalog / driver
    DuplicateRuleId,
    UnknownRuleId,
    Io,
    Usage,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `details` carries structured payload
/// such as the offending variable or the predicates of a cycle.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::optional<SourceLoc> loc = std::nullopt,
          std::vector<std::string> details = {});

    ErrorCode code() const noexcept { return code_; }
    const std::optional<SourceLoc>& loc() const noexcept { return loc_; }
    const std::vector<std::string>& details() const noexcept { return details_; }

    /// `file:line:col: error: message`; `-:0:0` stands in for a missing location.
    std::string diagnostic() const;

private:
    ErrorCode code_;
    std::optional<SourceLoc> loc_;
    std::vector<std::string> details_;
};

}  // namespace strucheck

#endif  // STRUCHECK_ERROR_HPP
