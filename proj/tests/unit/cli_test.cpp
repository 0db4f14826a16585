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

#include "strucheck/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace strucheck {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kSamples = STRUCHECK_SOURCE_DIR "/samples/";

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("strucheck_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    fs::path dir_;
};

TEST_F(CliTest, DiamondHasTwoViolations) {
    Result r = run_cli({"check", kSamples + "diamond.cpp"});
    EXPECT_EQ(r.code, kExitViolations);
    std::size_t headers = 0;
    for (std::size_t pos = 0; (pos = r.out.find("violation[hicpp_3_3_15]", pos)) != std::string::npos; ++pos) ++headers;
    EXPECT_EQ(headers, 2u);
}

TEST_F(CliTest, FixedDiamondIsClean) {
    Result r = run_cli({"check", kSamples + "fixed_diamond.cpp"});
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_EQ(r.out, "");
}

TEST_F(CliTest, EmptyFactFileIsClean) {
    std::string facts = write("empty.facts", "% strucheck facts v1\n");
    EXPECT_EQ(run_cli({"check", "--facts", facts}).code, kExitClean);
}

TEST_F(CliTest, ExtractThenCheckMatchesDirectCheck) {
    std::string facts = (dir_ / "d.facts").string();
    ASSERT_EQ(run_cli({"extract", kSamples + "diamond.cpp", "-o", facts}).code, kExitClean);
    for (std::string format : {"text", "json"}) {
        Result direct = run_cli({"check", "--format", format, kSamples + "diamond.cpp"});
        Result via = run_cli({"check", "--format", format, "--facts", facts});
        EXPECT_EQ(direct.code, via.code);
        EXPECT_EQ(direct.out, via.out);
    }
}

TEST_F(CliTest, JsonListsCheckedRules) {
    Result r = run_cli({"check", "--format", "json", "--enable", "hicpp_3_3_15", kSamples + "fixed_diamond.cpp"});
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_NE(r.out.find("\"rules_checked\": [\n    \"hicpp_3_3_15\"\n  ]"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\"violations\": []"), std::string::npos);
}

TEST_F(CliTest, DedupSymmetric) {
    Result r = run_cli({"check", "--dedup-symmetric", kSamples + "diamond.cpp"});
    EXPECT_EQ(r.code, kExitViolations);
    EXPECT_EQ(r.out.find("violation["), r.out.rfind("violation["));
}

TEST_F(CliTest, RuleFileWithBuiltinDisabled) {
    Result builtin = run_cli({"check", "--format", "json", kSamples + "diamond.cpp"});
    Result dsl = run_cli({"check", "--rules", STRUCHECK_SOURCE_DIR "/rules/hicpp.rules", "--disable", "hicpp_3_3_15",
                          kSamples + "diamond.cpp"});
    EXPECT_EQ(dsl.code, kExitViolations);
    EXPECT_NE(dsl.out.find("where a = A"), std::string::npos);
    EXPECT_EQ(run_cli({"check", "--rules", STRUCHECK_SOURCE_DIR "/rules/hicpp.rules", kSamples + "diamond.cpp"}).code,
              kExitError);
}

TEST_F(CliTest, CompileRulesPrintsProgram) {
    Result r = run_cli({"compile-rules"});
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_NE(r.out.find("base_of(X,Y) :- direct_base_of(X,Y).\n"), std::string::npos);
    EXPECT_NE(r.out.find("violate_hicpp_3_3_15(A,B,C,D) :- "), std::string::npos);
}

TEST_F(CliTest, FactsQuery) {
    Result r = run_cli({"facts", "--query", "base_of", kSamples + "diamond.cpp"});
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_EQ(r.out,
              "base_of(\"A\",\"B\").\nbase_of(\"A\",\"C\").\nbase_of(\"A\",\"D\").\nbase_of(\"B\",\"D\").\n"
              "base_of(\"C\",\"D\").\n");
    EXPECT_EQ(run_cli({"facts", "--query", "nope", kSamples + "diamond.cpp"}).code, kExitError);
}

TEST_F(CliTest, ErrorsExitTwoWithDiagnostic) {
    std::string bad = write("bad.cpp", "class A : Missing {};\n");
    Result r = run_cli({"check", bad});
    EXPECT_EQ(r.code, kExitError);
    EXPECT_NE(r.err.find(bad + ":1:11: error:"), std::string::npos) << r.err;

    std::string bad_rules = write("bad.rules", "rule r: forall a: class where\n");
    EXPECT_EQ(run_cli({"check", "--rules", bad_rules, kSamples + "diamond.cpp"}).code, kExitError);
    EXPECT_EQ(run_cli({"check", "--enable", "no_such_rule", kSamples + "diamond.cpp"}).code, kExitError);
    EXPECT_EQ(run_cli({"check"}).code, kExitError);
    EXPECT_EQ(run_cli({"check", (dir_ / "missing.cpp").string()}).code, kExitError);
    EXPECT_EQ(run_cli({"bogus"}).code, kExitError);
    EXPECT_EQ(run_cli({"check", "--format", "xml", kSamples + "diamond.cpp"}).code, kExitError);
}

TEST_F(CliTest, HelpExitsZero) {
    Result r = run_cli({"--help"});
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_NE(r.out.find("check"), std::string::npos);
}

}  // namespace
}  // namespace strucheck
