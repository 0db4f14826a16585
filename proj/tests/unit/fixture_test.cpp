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

// Golden tests: every `<name>.cpp` under fixtures/extractor must extract to
// exactly the checked-in `<name>.facts`.

#include <filesystem>

#include <gtest/gtest.h>

#include "strucheck/cpp_extractor.hpp"
#include "test_support.hpp"

namespace strucheck {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(STRUCHECK_FIXTURE_DIR "/extractor")) {
        if (entry.path().extension() == ".cpp") names.push_back(entry.path().stem().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

class ExtractorFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(ExtractorFixture, MatchesGolden) {
    const fs::path dir = STRUCHECK_FIXTURE_DIR "/extractor";
    const std::string cpp = GetParam() + ".cpp";
    FactBase fb = extract_project({SourceFile{cpp, testing::read_text((dir / cpp).string())}});
    std::string expected = testing::read_text((dir / (GetParam() + ".facts")).string());
    EXPECT_EQ(write_fact_file(fb), expected);
}

TEST_P(ExtractorFixture, FactFileRoundTrip) {
    const fs::path golden = fs::path(STRUCHECK_FIXTURE_DIR "/extractor") / (GetParam() + ".facts");
    std::string text = testing::read_text(golden.string());
    EXPECT_EQ(write_fact_file(read_fact_file(text, golden.string())), text);
}

INSTANTIATE_TEST_SUITE_P(Golden, ExtractorFixture, ::testing::ValuesIn(fixture_names()),
                         [](const auto& info) { return info.param; });

TEST(ExtractorFixtures, SuiteHasAtLeastTen) { EXPECT_GE(fixture_names().size(), 10u); }

}  // namespace
}  // namespace strucheck
