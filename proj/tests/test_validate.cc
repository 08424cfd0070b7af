// tests/test_validate.cc

// Copyright 2025  cseval authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <set>

#include "cseval/csv.h"
#include "cseval/error.h"
#include "cseval/lid.h"
#include "cseval/validate.h"
#include "cseval/zip.h"

using namespace cseval;
namespace fs = std::filesystem;

namespace {

Submission text_submission(const std::string& text) {
  Submission sub;
  sub.source = "test";
  sub.files["prediction.txt"] = text;
  return sub;
}

std::set<std::string> rules_of(const ValidationReport& report) {
  std::set<std::string> rules;
  for (const Violation& v : report.violations) rules.insert(v.rule);
  return rules;
}

const std::vector<SegmentId> kExpected = {
    {"rec_a", "a1", 0, 500},
    {"rec_a", "a2", 500, 900},
    {"rec_b", "a1", 100, 700},
};

std::string valid_prediction() {
  std::string text;
  for (const SegmentId& id : kExpected) {
    text += render_segment_id(id) + " 1.5 -0.5\n";
  }
  return text;
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("cseval_validate_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("a complete ordered file validates") {
  const ValidationReport report = validate_task1(text_submission(valid_prediction()), kExpected);
  CHECK(report.valid);
  CHECK(report.violations.empty());
  CHECK(report.counts.expected == 3);
  CHECK(report.counts.found == 3);
  CHECK(report.format_used == PredictionFormat::OneLine);
}

// One corruption at a time; the verdict must flip with exactly that rule.
TEST_CASE("task-1 mutation suite") {
  SUBCASE("missing segment") {
    std::string text = render_segment_id(kExpected[0]) + " 1.5 -0.5\n" +
                       render_segment_id(kExpected[2]) + " 1.5 -0.5\n";
    const ValidationReport report = validate_task1(text_submission(text), kExpected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"missing-segment"});
    CHECK(report.counts.missing == 1);
  }
  SUBCASE("duplicated segment") {
    const std::string line = render_segment_id(kExpected[0]) + " 1.5 -0.5\n";
    std::string text = valid_prediction() + line;
    const ValidationReport report = validate_task1(text_submission(text), kExpected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"duplicate-segment"});
    CHECK(report.counts.duplicated == 1);
  }
  SUBCASE("two segments swapped") {
    std::string text = render_segment_id(kExpected[1]) + " 1.5 -0.5\n" +
                       render_segment_id(kExpected[0]) + " 1.5 -0.5\n" +
                       render_segment_id(kExpected[2]) + " 1.5 -0.5\n";
    const ValidationReport report = validate_task1(text_submission(text), kExpected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"order-violation"});
    CHECK(report.counts.out_of_order == 2);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].message.find("lines 1, 2") != std::string::npos);
  }
  SUBCASE("unknown segment id") {
    std::string text = valid_prediction() + "rec_zz_a9_0_5 1.0 2.0\n";
    const ValidationReport report = validate_task1(text_submission(text), kExpected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"unknown-segment"});
  }
  SUBCASE("non-finite score") {
    std::string text = valid_prediction();
    text.replace(text.find("1.5"), 3, "inf");
    const ValidationReport report = validate_task1(text_submission(text), kExpected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"non-finite-score"});
  }
  SUBCASE("inconsistent format") {
    std::string text = render_segment_id(kExpected[0]) + " 0 1.5\n" +
                       render_segment_id(kExpected[0]) + " 1 -0.5\n" +
                       render_segment_id(kExpected[1]) + " 1.5 -0.5 extra\n";
    const ValidationReport report = validate_task1(text_submission(text), kExpected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"format-error"});
  }
  SUBCASE("two-line 0/1 order violated") {
    std::string text;
    for (const SegmentId& id : kExpected) {
      text += render_segment_id(id) + " 1 -0.5\n";
      text += render_segment_id(id) + " 0 1.5\n";
    }
    const ValidationReport report =
        validate_task1(text_submission(text), kExpected, PredictionFormat::TwoLine);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"format-error"});
  }
}

TEST_CASE("task-1 validation through real archives") {
  const fs::path dir = temp_dir("t1");
  zip_write((dir / "ok.zip").string(), {{"prediction.txt", valid_prediction()}});
  CHECK(validate_path((dir / "ok.zip").string(), Task::Lid, kExpected, {}).valid);

  zip_write((dir / "nested.zip").string(), {{"inner/prediction.txt", valid_prediction()}});
  const ValidationReport nested =
      validate_path((dir / "nested.zip").string(), Task::Lid, kExpected, {});
  CHECK(!nested.valid);
  CHECK(rules_of(nested) == std::set<std::string>{"archive-structure"});

  zip_write((dir / "with space.zip").string(), {{"prediction.txt", valid_prediction()}});
  const ValidationReport spaced =
      validate_path((dir / "with space.zip").string(), Task::Lid, kExpected, {});
  CHECK(!spaced.valid);
  CHECK(rules_of(spaced) == std::set<std::string>{"archive-name-space"});

  CHECK_THROWS_AS(validate_path((dir / "nope.zip").string(), Task::Lid, kExpected, {}),
                  IoError);
}

TEST_CASE("task-2 mutation suite") {
  const std::vector<std::string> expected = {"rec_a", "rec_b"};
  Submission sub;
  sub.source = "test";
  sub.files["rec_a"] = "0.0 500.0 English\n";
  sub.files["rec_b"] = "100.0 700.0 Mandarin\n";

  SUBCASE("well-formed archive validates") {
    const ValidationReport report = validate_task2(sub, expected);
    CHECK(report.valid);
    CHECK(report.counts.expected == 2);
    CHECK(report.counts.found == 2);
  }
  SUBCASE("missing recording") {
    sub.files.erase("rec_b");
    const ValidationReport report = validate_task2(sub, expected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"missing-recording"});
    CHECK(report.counts.missing == 1);
  }
  SUBCASE("unexpected extra file") {
    sub.files["rec_c"] = "0.0 5.0 English\n";
    const ValidationReport report = validate_task2(sub, expected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"unexpected-file"});
  }
  SUBCASE("unknown language id") {
    sub.files["rec_a"] = "0.0 500.0 Hokkien\n";
    const ValidationReport report = validate_task2(sub, expected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"unknown-language"});
  }
  SUBCASE("inverted turn times") {
    sub.files["rec_a"] = "500.0 0.0 English\n";
    const ValidationReport report = validate_task2(sub, expected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"invalid-turn-times"});
  }
  SUBCASE("negative time") {
    sub.files["rec_a"] = "-5.0 500.0 English\n";
    const ValidationReport report = validate_task2(sub, expected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"invalid-turn-times"});
  }
  SUBCASE("garbled line") {
    sub.files["rec_a"] = "0.0 500.0 English trailing\n";
    const ValidationReport report = validate_task2(sub, expected);
    CHECK(!report.valid);
    CHECK(rules_of(report) == std::set<std::string>{"turn-format-error"});
  }
}

TEST_CASE("validation is deterministic and read-only") {
  const Submission sub = text_submission(valid_prediction());
  const ValidationReport a = validate_task1(sub, kExpected);
  const ValidationReport b = validate_task1(sub, kExpected);
  CHECK(a.valid == b.valid);
  CHECK(a.violations.size() == b.violations.size());
  CHECK(a.counts.expected == b.counts.expected);
  CHECK(a.counts.found == b.counts.found);
}

TEST_CASE("out-of-order reports expose the lenient path") {
  std::string text = render_segment_id(kExpected[1]) + " 1.5 -0.5\n" +
                     render_segment_id(kExpected[0]) + " 1.5 -0.5\n" +
                     render_segment_id(kExpected[2]) + " 1.5 -0.5\n";
  const ValidationReport report = validate_task1(text_submission(text), kExpected);
  CHECK(!report.valid);
  CHECK(report.only_order_violations());
  const ValidationReport missing = validate_task1(text_submission(""), kExpected);
  CHECK(!missing.only_order_violations());
}

// Validation passing means scoring cannot fail on the submission side.
TEST_CASE("a valid task-1 submission always scores") {
  const std::vector<Grain> reference = {
      {"rec_a.wav", "a1", {0, 500}, LanguageLabel::English, false},
      {"rec_a.wav", "a2", {500, 900}, LanguageLabel::Mandarin, false},
      {"rec_b.wav", "a1", {100, 700}, LanguageLabel::English, false},
  };
  const Submission sub = text_submission(valid_prediction());
  const ValidationReport report = validate_task1(sub, kExpected);
  REQUIRE(report.valid);
  const ParsedPredictions parsed =
      parse_predictions(sub.files.at("prediction.txt"), kExpected);
  const LidReport scored = score_lid(reference, parsed.segments);
  CHECK(scored.n_trials == 3);
}
