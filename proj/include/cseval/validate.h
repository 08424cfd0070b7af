// include/cseval/validate.h

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

#ifndef CSEVAL_VALIDATE_H_
#define CSEVAL_VALIDATE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cseval/formats.h"

namespace cseval {

enum class Severity { Error, Warning };

struct Violation {
  std::string rule;  // stable identifier, e.g. "missing-segment"
  Severity severity = Severity::Error;
  std::string location;  // file name, with ":<line>" when known
  std::string message;
};

struct ValidationCounts {
  std::int64_t expected = 0;
  std::int64_t found = 0;
  std::int64_t missing = 0;
  std::int64_t duplicated = 0;
  std::int64_t out_of_order = 0;
};

struct ValidationReport {
  bool valid = false;  // no error-severity violation
  Task task = Task::Lid;
  std::vector<Violation> violations;
  ValidationCounts counts;
  // Task 1 bookkeeping, surfaced to the decisions log.
  PredictionFormat format_used = PredictionFormat::Auto;
  bool format_auto_detected = false;
  bool format_ambiguous = false;

  bool only_order_violations() const;
};

// Task-1 rules: exactly one prediction.txt, a single consistent format,
// every expected segment exactly once, nothing unknown, reference order,
// finite scores.
ValidationReport validate_task1(const Submission& submission,
                                const std::vector<SegmentId>& expected_ids,
                                PredictionFormat format = PredictionFormat::Auto);

// Task-2 rules: one well-formed turn file per expected recording (stem
// match), no extras, every line parseable with valid times and languages.
ValidationReport validate_task2(const Submission& submission,
                                const std::vector<std::string>& expected_stems);

// Opens `path` and validates; submission-structure problems become report
// violations while genuine I/O failures keep throwing IoError.
ValidationReport validate_path(const std::string& path, Task task,
                               const std::vector<SegmentId>& expected_ids,
                               const std::vector<std::string>& expected_stems,
                               PredictionFormat format = PredictionFormat::Auto);

}  // namespace cseval

#endif  // CSEVAL_VALIDATE_H_
