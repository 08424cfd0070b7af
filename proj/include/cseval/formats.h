// include/cseval/formats.h

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

#ifndef CSEVAL_FORMATS_H_
#define CSEVAL_FORMATS_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cseval/annotations.h"
#include "cseval/interval.h"

namespace cseval {

// ---------------------------------------------------------------------------
// Segment ids
// ---------------------------------------------------------------------------

// <audio_name>_<utt_id>_<start>_<end>, where audio_name carries no file
// extension and may itself contain underscores; utt_id may not.
struct SegmentId {
  std::string audio_name;
  std::string utt_id;
  Ms start = 0;
  Ms end = 0;

  bool operator==(const SegmentId&) const = default;
  auto operator<=>(const SegmentId&) const = default;
};

std::string render_segment_id(const SegmentId& id);  // throws on '_' in utt_id
SegmentId parse_segment_id(std::string_view s);

// Id for a reference grain; strips the final extension from the audio name.
SegmentId segment_id_for(const Grain& grain);
std::string audio_stem(std::string_view audio_name);

// ---------------------------------------------------------------------------
// Task-1 prediction files
// ---------------------------------------------------------------------------

struct ScoredSegment {
  SegmentId id;
  double score_english = 0.0;
  double score_mandarin = 0.0;

  bool operator==(const ScoredSegment&) const = default;
};

enum class PredictionFormat { Auto, TwoLine, OneLine };

std::string to_string(PredictionFormat f);

struct ParsedPredictions {
  std::vector<ScoredSegment> segments;  // in file order
  std::vector<int> line_numbers;        // first source line of each segment
  PredictionFormat format = PredictionFormat::OneLine;  // the format chosen
  bool auto_detected = false;
  bool ambiguous = false;  // file was consistent with both formats
};

// Parses prediction.txt content.  `expected` is the reference id list; a
// line naming an id outside it is a parse error (rule "unknown-segment").
// With Auto the format is detected: a file whose lines pair up with second
// fields exactly "0" then "1" is two-line, anything else one-line; files
// consistent with both read as two-line.
ParsedPredictions parse_predictions(std::string_view text,
                                    const std::vector<SegmentId>& expected,
                                    PredictionFormat format = PredictionFormat::Auto);

// Canonical rendering; parse(write(x)) == x and write(parse(y)) == y for y
// produced by this writer.  `format` must not be Auto.
std::string write_predictions(const std::vector<ScoredSegment>& segments,
                              PredictionFormat format);

// ---------------------------------------------------------------------------
// Task-2 language-turn files
// ---------------------------------------------------------------------------

struct LanguageTurn {
  Ms start = 0;
  Ms end = 0;
  LanguageLabel language = LanguageLabel::English;  // English or Mandarin

  bool operator==(const LanguageTurn&) const = default;
};

// Three space-delimited fields per line: start, end, language id.  Decimal
// times are rounded half-to-even to integer milliseconds.  The language id
// is matched case-sensitively against {English, Mandarin}.
std::vector<LanguageTurn> parse_language_turns(std::string_view text);

// One line per turn, times rendered as "<ms>.0".
std::string write_language_turns(const std::vector<LanguageTurn>& turns);

// Exact half-to-even rounding of a non-negative decimal literal to integer
// milliseconds.  Returns false for anything else (sign, exponent, garbage).
bool parse_decimal_ms(std::string_view s, Ms* out);

// ---------------------------------------------------------------------------
// Submissions
// ---------------------------------------------------------------------------

enum class Task { Lid = 1, Ld = 2 };

struct Submission {
  // Task 1: exactly {"prediction.txt" -> text}.
  // Task 2: one entry per turn file, keyed by filename stem.
  std::map<std::string, std::string> files;
  std::string source;  // path the submission was opened from
};

// Opens a zip archive, a plain directory, or (Task 1 only) a bare text
// file.  Layout rules are enforced for archives: Task 1 requires a single
// root-level prediction.txt, Task 2 root-level .txt files only, and the
// archive filename may not contain spaces.  Structure problems throw
// SubmissionError; an unreadable path throws IoError.
Submission open_submission(const std::string& path, Task task);

}  // namespace cseval

#endif  // CSEVAL_FORMATS_H_
