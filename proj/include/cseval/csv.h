// include/cseval/csv.h

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

#ifndef CSEVAL_CSV_H_
#define CSEVAL_CSV_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cseval {

struct CsvRow {
  int line = 0;  // 1-based line number in the source text
  std::vector<std::string> fields;
};

// Comma-separated rows.  Fields may be double-quoted ("" escapes a quote);
// unquoted fields are trimmed of surrounding spaces/tabs.  CRLF endings and
// blank lines are tolerated; blank lines yield no row.
std::vector<CsvRow> parse_csv(std::string_view text);

// Splits one line on runs of spaces/tabs after stripping a trailing '\r'.
std::vector<std::string> split_fields(std::string_view line);

// Strict decimal integer (no sign).  Returns false on any other content.
bool parse_int_field(std::string_view s, std::int64_t* out);

std::string read_file(const std::string& path);            // throws IoError
void write_file(const std::string& path, std::string_view content);

}  // namespace cseval

#endif  // CSEVAL_CSV_H_
