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

#include "strucheck/datalog.hpp"

#include <cctype>
#include <random>

#include <gtest/gtest.h>

#include "strucheck/rule_catalog.hpp"
#include "test_support.hpp"

namespace strucheck {
namespace {

using testing::NameSet;

// Capitalized names are variables, anything else a class constant.
Literal lit(std::string predicate, std::vector<std::string> args, bool negated = false) {
    Literal l{std::move(predicate), {}, negated};
    for (auto& a : args) {
        l.args.push_back(std::isupper(static_cast<unsigned char>(a[0])) ? Term::var(a)
                                                                          : Term::constant(Kind::Class, a));
    }
    return l;
}

Clause clause(Literal head, std::vector<BodyItem> body) { return Clause{std::move(head), std::move(body)}; }

Clause hicpp_clause() {
    return clause(lit("violate_hicpp_3_3_15", {"A", "B", "C", "D"}),
                  {lit("class", {"A"}), lit("class", {"B"}), lit("class", {"C"}), lit("class", {"D"}),
                   Disequality{Term::var("B"), Term::var("C")}, lit("direct_base_of", {"A", "B"}),
                   lit("direct_base_of", {"A", "C"}), lit("base_of", {"B", "D"}), lit("base_of", {"C", "D"}),
                   lit("virtual_base_of", {"A", "C"}, true)});
}

Program closure_program() {
    Program p;
    p.add(clause(lit("base_of", {"X", "Y"}), {lit("direct_base_of", {"X", "Y"})}));
    p.add(clause(lit("base_of", {"X", "Y"}), {lit("direct_base_of", {"X", "Z"}), lit("base_of", {"Z", "Y"})}));
    return p;
}

Program hicpp_program() {
    Program p = closure_program();
    p.add(hicpp_clause());
    return p;
}

FactBase diamond(bool ab_virtual) {
    FactBase fb;
    for (const char* c : {"a", "b", "c", "d"}) fb.assert_named("class", {c});
    fb.assert_named("direct_base_of", {"a", "b"});
    fb.assert_named("direct_base_of", {"a", "c"});
    fb.assert_named("direct_base_of", {"b", "d"});
    fb.assert_named("direct_base_of", {"c", "d"});
    if (ab_virtual) fb.assert_named("virtual_base_of", {"a", "b"});
    fb.freeze();
    return fb;
}

TEST(Safety, HicppClauseIsSafe) { EXPECT_FALSE(check_safety(hicpp_clause()).has_value()); }

TEST(Safety, NegatedOnlyVariableIsUnsafe) {
    EXPECT_EQ(check_safety(clause(lit("p", {"X"}), {lit("q", {"X"}, true)})), "X");
}

TEST(Safety, DisequalityOnlyVariableIsUnsafe) {
    Clause c = clause(lit("p", {"X"}), {lit("q", {"X"}), Disequality{Term::var("X"), Term::var("Y")}});
    EXPECT_EQ(check_safety(c), "Y");
}

TEST(Validate, RejectsUnsafeClauseWithCode) {
    Program p;
    p.add(clause(lit("p", {"X"}), {lit("class", {"X"}, true)}));
    try {
        validate(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsafeVariable);
    }
}

TEST(Validate, RejectsArityAndUnknownPredicates) {
    Program arity;
    arity.add(clause(lit("p", {"X"}), {lit("class", {"X", "Y"})}));
    EXPECT_THROW(validate(arity), Error);
    Program unknown;
    unknown.add(clause(lit("p", {"X"}), {lit("nothing", {"X"})}));
    EXPECT_THROW(validate(unknown), Error);
}

TEST(Stratify, HicppProgramHasTwoStrata) {
    Stratification s = stratify(hicpp_program());
    ASSERT_EQ(s.strata.size(), 2u);
    EXPECT_EQ(s.strata[0], (std::vector<std::string>{"base_of"}));
    EXPECT_EQ(s.strata[1], (std::vector<std::string>{"violate_hicpp_3_3_15"}));
}

TEST(Stratify, SelfNegationIsCyclic) {
    Program p;
    p.add(clause(Literal{"p", {}, false}, {Literal{"p", {}, true}}));
    try {
        stratify(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CyclicNegation);
        EXPECT_EQ(e.details(), (std::vector<std::string>{"p"}));
    }
}

TEST(Stratify, MutualNegationIsCyclic) {
    Program p;
    p.add(clause(lit("p", {"X"}), {lit("class", {"X"}), lit("q", {"X"}, true)}));
    p.add(clause(lit("q", {"X"}), {lit("class", {"X"}), lit("p", {"X"}, true)}));
    try {
        stratify(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CyclicNegation);
        EXPECT_EQ(e.details(), (std::vector<std::string>{"p", "q"}));
    }
}

TEST(Stratify, NegationFreeProgramIsOneStratum) {
    EXPECT_EQ(stratify(closure_program()).strata.size(), 1u);
}

TEST(Evaluate, ChainClosure) {
    FactBase fb;
    fb.assert_named("direct_base_of", {"a", "b"});
    fb.assert_named("direct_base_of", {"b", "c"});
    fb.freeze();
    EXPECT_EQ(testing::names_of(evaluate(closure_program(), fb), "base_of"),
              (NameSet{{"a", "b"}, {"b", "c"}, {"a", "c"}}));
}

TEST(Evaluate, DiamondWitnesses) {
    FactBase fb = diamond(false);
    Model m = evaluate(hicpp_program(), fb);
    EXPECT_EQ(testing::names_of(m, "violate_hicpp_3_3_15"), (NameSet{{"a", "b", "c", "d"}, {"a", "c", "b", "d"}}));
    EXPECT_EQ(testing::names_of(m, "base_of"), (NameSet{{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"a", "d"}}));
}

TEST(Evaluate, DiamondWithOneVirtualEdge) {
    FactBase fb = diamond(true);
    EXPECT_EQ(testing::names_of(evaluate(hicpp_program(), fb), "violate_hicpp_3_3_15"),
              (NameSet{{"a", "b", "c", "d"}}));
}

TEST(Evaluate, LinearChainOfFifty) {
    FactBase fb = testing::facts_of(testing::chain(50));
    EXPECT_EQ(query(evaluate(closure_program(), fb), "base_of").size(), 1225u);
}

TEST(Evaluate, EmptyFactBaseDerivesNothing) {
    FactBase fb;
    Model m = evaluate(hicpp_program(), fb);
    EXPECT_EQ(m.derived_count(), 0u);
    EXPECT_TRUE(query(m, "violate_hicpp_3_3_15").empty());
}

TEST(Evaluate, ConstantsResolveAndMissingConstantsMatchNothing) {
    FactBase fb = diamond(false);
    Program p;
    p.add(clause(lit("p", {"X"}), {lit("direct_base_of", {"a", "X"})}));
    p.add(clause(lit("q", {"X"}), {lit("direct_base_of", {"zz", "X"})}));
    p.add(clause(lit("r", {"X"}), {lit("class", {"X"}), Disequality{Term::var("X"), Term::constant(Kind::Class, "a")}}));
    Model m = evaluate(p, fb);
    EXPECT_EQ(testing::names_of(m, "p"), (NameSet{{"b"}, {"c"}}));
    EXPECT_TRUE(query(m, "q").empty());
    EXPECT_EQ(testing::names_of(m, "r"), (NameSet{{"b"}, {"c"}, {"d"}}));
}

TEST(Query, UnknownPredicateThrows) {
    FactBase fb;
    Model m = evaluate(closure_program(), fb);
    try {
        query(m, "nope");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownPredicate);
    }
}

TEST(Query, DeterministicAcrossRuns) {
    FactBase fb = diamond(false);
    EXPECT_EQ(query(evaluate(hicpp_program(), fb), "violate_hicpp_3_3_15"),
              query(evaluate(hicpp_program(), fb), "violate_hicpp_3_3_15"));
}

TEST(Dump, HicppClause) {
    EXPECT_EQ(dump_clause(hicpp_clause()),
              "violate_hicpp_3_3_15(A,B,C,D) :- class(A), class(B), class(C), class(D), B \\= C, "
              "direct_base_of(A,B), direct_base_of(A,C), base_of(B,D), base_of(C,D), \\+ virtual_base_of(A,C).");
}

TEST(Properties, SemiNaiveMatchesNaive) {
    std::mt19937 rng(7);
    for (int i = 0; i < 2000; ++i) {
        testing::RandomInstance inst = testing::random_instance(rng);
        EXPECT_EQ(evaluate(inst.program, inst.facts), evaluate_naive(inst.program, inst.facts))
            << dump_program(inst.program) << write_fact_file(inst.facts);
    }
}

TEST(Properties, EvaluationIsIdempotent) {
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        testing::RandomInstance inst = testing::random_instance(rng);
        Model once = evaluate(inst.program, inst.facts);
        EXPECT_EQ(evaluate(inst.program, once), once);
    }
}

TEST(Properties, PositiveProgramsAreMonotone) {
    std::mt19937 rng(13);
    for (int i = 0; i < 50; ++i) {
        testing::Hierarchy small = testing::random_hierarchy(rng, 12, 0.2, 0.0);
        testing::Hierarchy large = small;
        large.edges.emplace(0, 11);
        FactBase fs = testing::facts_of(small);
        FactBase fl = testing::facts_of(large);
        NameSet before = testing::names_of(evaluate(closure_program(), fs), "base_of");
        NameSet after = testing::names_of(evaluate(closure_program(), fl), "base_of");
        EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    }
}

TEST(Properties, ClosureMatchesReachability) {
    std::mt19937 rng(17);
    for (int i = 0; i < 30; ++i) {
        testing::Hierarchy h = testing::random_hierarchy(rng, 30, 0.1, 0.0);
        FactBase fb = testing::facts_of(h);
        EXPECT_EQ(testing::names_of(evaluate(closure_program(), fb), "base_of"), testing::reachability(h));
    }
}

TEST(Properties, IsVirtualPropagatesDownEveryChain) {
    // Graph-walk oracle: a function is virtual iff some same-named function in
    // the class or one of its bases is declared virtual.
    std::mt19937 rng(19);
    for (int i = 0; i < 30; ++i) {
        testing::Hierarchy h = testing::random_hierarchy(rng, 10, 0.25, 0.0);
        FactBase fb;
        std::bernoulli_distribution declares(0.6), virt(0.3);
        std::vector<bool> has_f(h.size), virtual_f(h.size);
        for (std::size_t c = 0; c < h.size; ++c) {
            std::string cls = testing::Hierarchy::name(c);
            fb.assert_named("class", {cls});
            if (!declares(rng)) continue;
            has_f[c] = true;
            std::string f = cls + "::f()";
            fb.assert_named("declares_member_function", {cls, f});
            fb.assert_named("function_name", {f, "f"});
            fb.assert_named("signature", {f, "()"});
            if (virt(rng)) {
                virtual_f[c] = true;
                fb.assert_named("virtual_kw", {f});
            }
        }
        for (auto [b, d] : h.edges) {
            fb.assert_named("direct_base_of", {testing::Hierarchy::name(b), testing::Hierarchy::name(d)});
        }
        fb.freeze();
        NameSet reach = testing::reachability(h);
        NameSet expected;
        for (std::size_t c = 0; c < h.size; ++c) {
            if (!has_f[c]) continue;
            bool v = virtual_f[c];
            for (std::size_t b = 0; b < h.size; ++b) {
                if (virtual_f[b] && reach.contains({testing::Hierarchy::name(b), testing::Hierarchy::name(c)})) v = true;
            }
            if (v) expected.insert({testing::Hierarchy::name(c) + "::f()"});
        }
        EXPECT_EQ(testing::names_of(evaluate(prelude(), fb), "is_virtual"), expected);
    }
}

}  // namespace
}  // namespace strucheck
