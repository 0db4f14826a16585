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

#include "strucheck/error.hpp"

namespace strucheck {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownPredicate: return "UnknownPredicate";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateClass: return "DuplicateClass";
    case ErrorCode::UnresolvedBase: return "UnresolvedBase";
    case ErrorCode::InheritanceCycle: return "InheritanceCycle";
    case ErrorCode::InvalidClause: return "InvalidClause";
    case ErrorCode::CyclicNegation: return "CyclicNegation";
    case ErrorCode::UnsafeVariable: return "UnsafeVariable";
    case ErrorCode::DslSyntaxError: return "DslSyntaxError";
    case ErrorCode::DuplicateRuleName: return "DuplicateRuleName";
    case ErrorCode::DuplicateRelation: return "DuplicateRelation";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnknownPredicateInRule: return "UnknownPredicateInRule";
    case ErrorCode::ArityMismatchInRule: return "ArityMismatchInRule";
    case ErrorCode::UnknownHole: return "UnknownHole";
    case ErrorCode::DuplicateRuleId: return "DuplicateRuleId";
    case ErrorCode::UnknownRuleId: return "UnknownRuleId";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::optional<SourceLoc> loc,
             std::vector<std::string> details)
    : std::runtime_error(std::move(message)),
      code_(code),
      loc_(std::move(loc)),
      details_(std::move(details)) {}

std::string Error::diagnostic() const {
    std::string out;
    if (loc_) {
        out += loc_->file.empty() ? "-" : loc_->file;
        out += ':' + std::to_string(loc_->line) + ':' + std::to_string(loc_->column) + ": ";
    } else {
        out += "-:0:0: ";
    }
    out += "error: ";
    out += what();
    return out;
}

}  // namespace strucheck
