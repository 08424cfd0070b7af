// src/validate.cc

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

#include "cseval/validate.h"

#include <algorithm>
#include <map>
#include <set>

#include "cseval/error.h"

namespace cseval {

namespace {

constexpr std::size_t kMaxListedViolations = 50;

void add_violation(ValidationReport& report, std::string rule, std::string location,
                   std::string message) {
  report.violations.push_back(
      {std::move(rule), Severity::Error, std::move(location), std::move(message)});
}

std::string line_location(const std::string& file, int line) {
  return line > 0 ? file + ":" + std::to_string(line) : file;
}

}  // namespace

bool ValidationReport::only_order_violations() const {
  if (violations.empty()) return false;
  return std::all_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.rule == "order-violation"; });
}

ValidationReport validate_task1(const Submission& submission,
                                const std::vector<SegmentId>& expected_ids,
                                PredictionFormat format) {
  ValidationReport report;
  report.task = Task::Lid;
  report.counts.expected = static_cast<std::int64_t>(expected_ids.size());

  const auto it = submission.files.find("prediction.txt");
  if (it == submission.files.end()) {
    add_violation(report, "archive-structure", submission.source,
                  "submission contains no prediction.txt");
    return report;
  }

  ParsedPredictions parsed;
  try {
    parsed = parse_predictions(it->second, expected_ids, format);
  } catch (const ParseError& e) {
    add_violation(report, e.rule.empty() ? "format-error" : e.rule,
                  line_location("prediction.txt", e.line), e.what());
    return report;
  }
  report.format_used = parsed.format;
  report.format_auto_detected = parsed.auto_detected;
  report.format_ambiguous = parsed.ambiguous;
  report.counts.found = static_cast<std::int64_t>(parsed.segments.size());

  std::vector<std::string> file_ids(parsed.segments.size());
  for (std::size_t i = 0; i < parsed.segments.size(); ++i) {
    file_ids[i] = render_segment_id(parsed.segments[i].id);
  }
  std::vector<std::string> expected(expected_ids.size());
  for (std::size_t i = 0; i < expected_ids.size(); ++i) {
    expected[i] = render_segment_id(expected_ids[i]);
  }

  // Duplicates.
  std::map<std::string, std::vector<std::size_t>> occurrences;
  for (std::size_t i = 0; i < file_ids.size(); ++i) occurrences[file_ids[i]].push_back(i);
  std::size_t listed = 0;
  for (const auto& [id, where] : occurrences) {
    if (where.size() < 2) continue;
    report.counts.duplicated += static_cast<std::int64_t>(where.size() - 1);
    if (listed++ < kMaxListedViolations) {
      std::string lines;
      for (std::size_t i : where) {
        lines += (lines.empty() ? "" : ", ") + std::to_string(parsed.line_numbers[i]);
      }
      add_violation(report, "duplicate-segment", "prediction.txt",
                    "segment " + id + " appears " + std::to_string(where.size()) +
                        " times (lines " + lines + ")");
    }
  }

  // Missing.
  listed = 0;
  for (const std::string& id : expected) {
    if (occurrences.count(id)) continue;
    ++report.counts.missing;
    if (listed++ < kMaxListedViolations) {
      add_violation(report, "missing-segment", "prediction.txt",
                    "expected segment " + id + " is missing");
    }
  }
  if (report.counts.missing > static_cast<std::int64_t>(kMaxListedViolations)) {
    add_violation(report, "missing-segment", "prediction.txt",
                  std::to_string(report.counts.missing - kMaxListedViolations) +
                      " further segments are missing");
  }

  // Order: meaningful only once the sets agree.
  if (report.counts.missing == 0 && report.counts.duplicated == 0 &&
      file_ids.size() == expected.size()) {
    std::vector<std::size_t> mismatched;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (file_ids[i] != expected[i]) mismatched.push_back(i);
    }
    report.counts.out_of_order = static_cast<std::int64_t>(mismatched.size());
    if (!mismatched.empty()) {
      std::string lines;
      for (std::size_t k = 0; k < mismatched.size() && k < 8; ++k) {
        lines += (lines.empty() ? "" : ", ") +
                 std::to_string(parsed.line_numbers[mismatched[k]]);
      }
      add_violation(report, "order-violation", "prediction.txt",
                    std::to_string(mismatched.size()) +
                        " segments are out of reference order (lines " + lines + ")");
    }
  }

  report.valid = report.violations.empty();
  return report;
}

ValidationReport validate_task2(const Submission& submission,
                                const std::vector<std::string>& expected_stems) {
  ValidationReport report;
  report.task = Task::Ld;
  report.counts.expected = static_cast<std::int64_t>(expected_stems.size());
  report.counts.found = static_cast<std::int64_t>(submission.files.size());

  const std::set<std::string> expected(expected_stems.begin(), expected_stems.end());
  for (const std::string& stem : expected) {
    if (!submission.files.count(stem)) {
      ++report.counts.missing;
      add_violation(report, "missing-recording", submission.source,
                    "no turn file for recording " + stem);
    }
  }
  for (const auto& [stem, text] : submission.files) {
    if (!expected.count(stem)) {
      add_violation(report, "unexpected-file", stem + ".txt",
                    "turn file does not match any expected recording");
      continue;
    }
    try {
      parse_language_turns(text);
    } catch (const ParseError& e) {
      add_violation(report, e.rule.empty() ? "turn-format-error" : e.rule,
                    line_location(stem + ".txt", e.line), e.what());
    }
  }

  report.valid = report.violations.empty();
  return report;
}

ValidationReport validate_path(const std::string& path, Task task,
                               const std::vector<SegmentId>& expected_ids,
                               const std::vector<std::string>& expected_stems,
                               PredictionFormat format) {
  Submission submission;
  try {
    submission = open_submission(path, task);
  } catch (const SubmissionError& e) {
    ValidationReport report;
    report.task = task;
    report.counts.expected = task == Task::Lid
                                 ? static_cast<std::int64_t>(expected_ids.size())
                                 : static_cast<std::int64_t>(expected_stems.size());
    add_violation(report, e.rule, path, e.what());
    return report;
  }
  return task == Task::Lid ? validate_task1(submission, expected_ids, format)
                           : validate_task2(submission, expected_stems);
}

}  // namespace cseval
