// include/cseval/report.h

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

#ifndef CSEVAL_REPORT_H_
#define CSEVAL_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cseval/annotations.h"
#include "cseval/ld.h"
#include "cseval/lid.h"
#include "cseval/validate.h"

namespace cseval {

inline constexpr const char* kToolName = "cseval";
inline constexpr const char* kToolVersion = "1.0.0";

nlohmann::json to_json(const LidReport& report);
nlohmann::json to_json(const LdReport& report);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const CorpusStats& stats);

std::string crc32_hex(std::string_view bytes);

// Envelope every CLI run emits: tool identity, input digests, the effective
// options, tie-break/auto-detection decisions, and the payload blocks.
struct EvalReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // (role, path)
  nlohmann::json options = nlohmann::json::object();
  std::vector<std::string> decisions;
  std::optional<nlohmann::json> validation;
  std::optional<nlohmann::json> metrics;
  std::optional<std::int64_t> wall_ms;  // absent under --deterministic
};

// Digests each input file with crc32 while assembling the envelope.
nlohmann::json to_json(const EvalReport& report);

}  // namespace cseval

#endif  // CSEVAL_REPORT_H_
