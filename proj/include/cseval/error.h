// include/cseval/error.h

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

#ifndef CSEVAL_ERROR_H_
#define CSEVAL_ERROR_H_

#include <stdexcept>
#include <string>

namespace cseval {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The input file itself could not be read (missing, permission, truncated
// filesystem read).  Distinct from a submission being *invalid*.
struct IoError : Error {
  using Error::Error;
};

// Malformed content in an input file.  `line` is 1-based (0 = unknown) and
// `rule` is a stable machine-readable identifier used by the validation
// report.
struct ParseError : Error {
  ParseError(const std::string& message, int line_number = 0,
             std::string rule_id = "")
      : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + message
                              : message),
        line(line_number),
        rule(std::move(rule_id)) {}

  int line = 0;
  std::string rule;
};

// A submission archive/directory violates the required layout (missing
// prediction.txt, nested entries, corrupt zip entry, ...).
struct SubmissionError : Error {
  SubmissionError(const std::string& message, std::string rule_id = "archive-structure")
      : Error(message), rule(std::move(rule_id)) {}

  std::string rule;
};

// Bad generator or CLI configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Metrics are undefined for the given inputs (degenerate trial set, zero
// denominator).
struct MetricError : Error {
  using Error::Error;
};

}  // namespace cseval

#endif  // CSEVAL_ERROR_H_
