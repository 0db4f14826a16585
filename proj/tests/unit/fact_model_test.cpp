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

#include "strucheck/fact_model.hpp"

#include <gtest/gtest.h>

namespace strucheck {
namespace {

TEST(FactBase, InternIsIdempotent) {
    FactBase fb;
    EntityId a = fb.intern(Kind::Class, "A");
    EXPECT_EQ(fb.intern(Kind::Class, "A"), a);
    EXPECT_EQ(fb.entity_count(), 1u);
}

TEST(FactBase, KindIsPartOfIdentity) {
    FactBase fb;
    EXPECT_NE(fb.intern(Kind::Class, "A"), fb.intern(Kind::Function, "A"));
}

TEST(FactBase, OrdinalsAreDenseInInsertionOrder) {
    FactBase fb;
    EXPECT_EQ(fb.intern(Kind::Class, "X").ordinal, 0u);
    EXPECT_EQ(fb.intern(Kind::Class, "Y").ordinal, 1u);
    EXPECT_EQ(fb.intern(Kind::Class, "Z").ordinal, 2u);
}

TEST(FactBase, InternRejectsEmptyNameAndZeroPosition) {
    FactBase fb;
    EXPECT_THROW(fb.intern(Kind::Class, ""), std::invalid_argument);
    EXPECT_THROW(fb.intern(Kind::Class, "A", SourceLoc{"a.cpp", 0, 1}), std::invalid_argument);
}

TEST(FactBase, FirstLocationWins) {
    FactBase fb;
    EntityId a = fb.intern(Kind::Class, "A", SourceLoc{"a.cpp", 3, 7});
    fb.intern(Kind::Class, "A", SourceLoc{"b.cpp", 9, 1});
    EXPECT_EQ(fb.entity(a).loc->file, "a.cpp");
}

TEST(FactBase, AssertHasSetSemantics) {
    FactBase fb;
    fb.assert_named("direct_base_of", {"A", "B"});
    fb.assert_named("direct_base_of", {"A", "B"});
    EXPECT_EQ(fb.tuples("direct_base_of").size(), 1u);
}

TEST(FactBase, ArityMismatch) {
    FactBase fb;
    Tuple args = {fb.intern(Kind::Class, "A"), fb.intern(Kind::Class, "B")};
    try {
        fb.assert_fact("class", args);
        FAIL() << "expected ArityMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
    }
}

TEST(FactBase, UnknownPredicateAndSortMismatch) {
    FactBase fb;
    EntityId a = fb.intern(Kind::Class, "A");
    EntityId f = fb.intern(Kind::Function, "A::f()");
    try {
        fb.assert_fact("no_such", {a});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownPredicate);
    }
    try {
        fb.assert_fact("class", {f});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SortMismatch);
    }
}

TEST(FactBase, AccessSymbolsAreRestricted) {
    FactBase fb;
    EXPECT_THROW(fb.assert_named("member_access", {"A", "A::x", "friendly"}), Error);
    fb.assert_named("member_access", {"A", "A::x", "public"});
    EXPECT_EQ(fb.tuples("member_access").size(), 1u);
}

TEST(FactBase, VirtualBaseOfAccepted) {
    FactBase fb;
    fb.assert_named("virtual_base_of", {"A", "B"});
    EXPECT_EQ(fb.tuples("virtual_base_of").size(), 1u);
}

TEST(FactBase, TuplesIsASnapshot) {
    FactBase fb;
    EXPECT_TRUE(fb.tuples("direct_base_of").empty());
    fb.assert_named("direct_base_of", {"A", "B"});
    fb.assert_named("direct_base_of", {"A", "C"});
    std::set<Tuple> snapshot = fb.tuples("direct_base_of");
    EntityId a = *fb.find(Kind::Class, "A");
    EXPECT_EQ(snapshot, (std::set<Tuple>{{a, *fb.find(Kind::Class, "B")}, {a, *fb.find(Kind::Class, "C")}}));
    fb.assert_named("direct_base_of", {"B", "C"});
    EXPECT_EQ(snapshot.size(), 2u);
}

TEST(FactBase, FrozenRejectsMutation) {
    FactBase fb;
    fb.freeze();
    EXPECT_THROW(fb.assert_named("class", {"A"}), std::logic_error);
}

TEST(FactBase, MergeFillsUnknownLocations) {
    FactBase left;
    left.assert_named("direct_base_of", {"A", "B"});
    FactBase right;
    right.intern(Kind::Class, "A", SourceLoc{"a.cpp", 1, 7});
    right.assert_named("class", {"A"});
    left.merge(right);
    EXPECT_EQ(left.entity(*left.find(Kind::Class, "A")).loc->file, "a.cpp");
    EXPECT_EQ(left.fact_count(), 2u);
    EXPECT_TRUE(left.schema_consistent());
}

TEST(FactFile, GoldenSingleClass) {
    FactBase fb;
    fb.intern(Kind::Class, "A", SourceLoc{"a.cpp", 1, 7});
    fb.assert_named("class", {"A"});
    EXPECT_EQ(write_fact_file(fb),
              "% strucheck facts v1\n"
              "entity(class,\"A\",\"a.cpp\",1,7).\n"
              "class(\"A\").\n");
}

TEST(FactFile, EmptyIsHeaderOnly) {
    EXPECT_EQ(write_fact_file(FactBase{}), "% strucheck facts v1\n");
}

TEST(FactFile, ReadSingleFact) {
    FactBase fb = read_fact_file("class(\"A\").\n");
    EXPECT_EQ(fb.entity_count(), 1u);
    EXPECT_EQ(fb.tuples("class").size(), 1u);
    EXPECT_FALSE(fb.entity(EntityId{0}).loc.has_value());
}

TEST(FactFile, MalformedLineIsParseErrorAtThatLine) {
    try {
        read_fact_file("% strucheck facts v1\nclass(A\n", "bad.facts");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        ASSERT_TRUE(e.loc().has_value());
        EXPECT_EQ(e.loc()->file, "bad.facts");
        EXPECT_EQ(e.loc()->line, 2u);
    }
}

TEST(FactFile, DuplicateFactsCollapse) {
    FactBase fb = read_fact_file("class(\"A\").\nclass(\"A\").\n");
    EXPECT_EQ(fb.tuples("class").size(), 1u);
}

TEST(FactFile, RoundTripIsByteStable) {
    FactBase fb;
    fb.intern(Kind::Class, "B", SourceLoc{"x.cpp", 4, 7});
    fb.intern(Kind::Class, "A", SourceLoc{"x.cpp", 1, 7});
    fb.assert_named("direct_base_of", {"A", "B"});
    fb.assert_named("declares_member_function", {"B", "B::operator==(const B&)const"});
    fb.assert_named("signature", {"B::operator==(const B&)const", "(const B&)const"});
    fb.assert_named("function_name", {"B::operator==(const B&)const", "operator=="});
    fb.assert_named("member_access", {"B", "B::operator==(const B&)const", "public"});
    std::string once = write_fact_file(fb);
    FactBase back = read_fact_file(once);
    EXPECT_EQ(back, fb);
    EXPECT_EQ(write_fact_file(back), once);
}

TEST(FactFile, SymbolQuoting) {
    EXPECT_TRUE(is_bare_symbol("public"));
    EXPECT_TRUE(is_bare_symbol("f_2"));
    EXPECT_FALSE(is_bare_symbol("(int)"));
    EXPECT_FALSE(is_bare_symbol("~A"));
    EXPECT_FALSE(is_bare_symbol("Foo"));
    EXPECT_EQ(quote("a\"b\\c"), "\"a\\\"b\\\\c\"");
}

}  // namespace
}  // namespace strucheck
