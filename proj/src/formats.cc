// src/formats.cc

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

#include "cseval/formats.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <unordered_set>

#include "cseval/csv.h"
#include "cseval/error.h"
#include "cseval/zip.h"

namespace fs = std::filesystem;

namespace cseval {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> fields;
};

std::vector<Line> nonblank_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
    ++number;
    std::vector<std::string> fields = split_fields(line);
    if (!fields.empty()) lines.push_back({number, std::move(fields)});
  }
  return lines;
}

// Full-token strtod; rejects trailing garbage but not inf/nan tokens, which
// the caller reports under a separate rule.
bool parse_real(const std::string& s, double* out) {
  if (s.empty()) return false;
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size()) return false;
  *out = v;
  return true;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parsed_score(const std::string& field, int line) {
  double v = 0.0;
  if (!parse_real(field, &v)) {
    throw ParseError("malformed score '" + field + "'", line, "format-error");
  }
  if (!std::isfinite(v)) {
    throw ParseError("non-finite score '" + field + "'", line, "non-finite-score");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Segment ids
// ---------------------------------------------------------------------------

std::string render_segment_id(const SegmentId& id) {
  if (id.audio_name.empty() || id.utt_id.empty()) {
    throw Error("segment id requires non-empty audio name and utt_id");
  }
  if (id.utt_id.find('_') != std::string::npos) {
    throw Error("utt_id '" + id.utt_id + "' contains an underscore and cannot be rendered");
  }
  if (id.start < 0 || id.end <= id.start) {
    throw Error("segment id has an empty or negative span");
  }
  return id.audio_name + "_" + id.utt_id + "_" + std::to_string(id.start) + "_" +
         std::to_string(id.end);
}

SegmentId parse_segment_id(std::string_view s) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find('_', pos);
    if (next == std::string_view::npos) {
      fields.emplace_back(s.substr(pos));
      break;
    }
    fields.emplace_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  if (fields.size() < 4) {
    throw ParseError("segment id '" + std::string(s) + "' has fewer than 4 fields");
  }
  SegmentId id;
  std::int64_t start = 0, end = 0;
  if (!parse_int_field(fields[fields.size() - 2], &start) ||
      !parse_int_field(fields[fields.size() - 1], &end)) {
    throw ParseError("segment id '" + std::string(s) + "' has non-integer times");
  }
  if (end <= start) {
    throw ParseError("segment id '" + std::string(s) + "' has an empty or negative span");
  }
  id.start = start;
  id.end = end;
  id.utt_id = fields[fields.size() - 3];
  if (id.utt_id.empty()) {
    throw ParseError("segment id '" + std::string(s) + "' has an empty utt_id");
  }
  std::string audio;
  for (std::size_t i = 0; i + 3 < fields.size(); ++i) {
    if (i > 0) audio += '_';
    audio += fields[i];
  }
  if (audio.empty()) {
    throw ParseError("segment id '" + std::string(s) + "' has an empty audio name");
  }
  id.audio_name = std::move(audio);
  return id;
}

std::string audio_stem(std::string_view audio_name) {
  const std::size_t dot = audio_name.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return std::string(audio_name);
  return std::string(audio_name.substr(0, dot));
}

SegmentId segment_id_for(const Grain& grain) {
  return SegmentId{audio_stem(grain.audio_name), grain.utt_id, grain.span.start,
                   grain.span.end};
}

// ---------------------------------------------------------------------------
// Task-1 prediction files
// ---------------------------------------------------------------------------

std::string to_string(PredictionFormat f) {
  switch (f) {
    case PredictionFormat::Auto: return "auto";
    case PredictionFormat::TwoLine: return "two-line";
    case PredictionFormat::OneLine: return "one-line";
  }
  return "auto";
}

namespace {

bool consistent_with_two_line(const std::vector<Line>& lines) {
  if (lines.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < lines.size(); i += 2) {
    const Line& a = lines[i];
    const Line& b = lines[i + 1];
    if (a.fields.size() != 3 || b.fields.size() != 3) return false;
    if (a.fields[0] != b.fields[0]) return false;
    if (a.fields[1] != "0" || b.fields[1] != "1") return false;
  }
  return true;
}

bool consistent_with_one_line(const std::vector<Line>& lines) {
  for (const Line& l : lines) {
    if (l.fields.size() != 3) return false;
    double v = 0.0;
    if (!parse_real(l.fields[1], &v) || !std::isfinite(v)) return false;
    if (!parse_real(l.fields[2], &v) || !std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

ParsedPredictions parse_predictions(std::string_view text,
                                    const std::vector<SegmentId>& expected,
                                    PredictionFormat format) {
  const std::vector<Line> lines = nonblank_lines(text);

  ParsedPredictions out;
  if (format == PredictionFormat::Auto) {
    out.auto_detected = true;
    const bool two = consistent_with_two_line(lines);
    out.format = two ? PredictionFormat::TwoLine : PredictionFormat::OneLine;
    out.ambiguous = two && consistent_with_one_line(lines);
  } else {
    out.format = format;
  }

  std::unordered_set<std::string> known;
  known.reserve(expected.size());
  for (const SegmentId& id : expected) known.insert(render_segment_id(id));
  auto check_id = [&](const std::string& id, int line) {
    if (!known.count(id)) {
      throw ParseError("unknown segment id '" + id + "'", line, "unknown-segment");
    }
  };

  if (out.format == PredictionFormat::TwoLine) {
    if (lines.size() % 2 != 0) {
      throw ParseError("two-line format requires line pairs; file has an odd line count",
                       lines.empty() ? 0 : lines.back().number, "format-error");
    }
    for (std::size_t i = 0; i < lines.size(); i += 2) {
      const Line& a = lines[i];
      const Line& b = lines[i + 1];
      if (a.fields.size() != 3) {
        throw ParseError("expected 3 space-delimited fields", a.number, "format-error");
      }
      if (b.fields.size() != 3) {
        throw ParseError("expected 3 space-delimited fields", b.number, "format-error");
      }
      if (a.fields[1] == "1") {
        throw ParseError("Mandarin score line (1) precedes the English score line (0)",
                         a.number, "format-error");
      }
      if (a.fields[1] != "0") {
        throw ParseError("second field must be 0 (English) here, got '" + a.fields[1] + "'",
                         a.number, "format-error");
      }
      if (b.fields[1] != "1") {
        throw ParseError("second field must be 1 (Mandarin) here, got '" + b.fields[1] + "'",
                         b.number, "format-error");
      }
      if (a.fields[0] != b.fields[0]) {
        throw ParseError("unpaired two-line rows: '" + a.fields[0] + "' followed by '" +
                             b.fields[0] + "'",
                         b.number, "format-error");
      }
      check_id(a.fields[0], a.number);
      ScoredSegment seg;
      seg.id = parse_segment_id(a.fields[0]);
      seg.score_english = parsed_score(a.fields[2], a.number);
      seg.score_mandarin = parsed_score(b.fields[2], b.number);
      out.segments.push_back(std::move(seg));
      out.line_numbers.push_back(a.number);
    }
  } else {
    for (const Line& l : lines) {
      if (l.fields.size() != 3) {
        throw ParseError("expected 3 space-delimited fields", l.number, "format-error");
      }
      check_id(l.fields[0], l.number);
      ScoredSegment seg;
      seg.id = parse_segment_id(l.fields[0]);
      seg.score_english = parsed_score(l.fields[1], l.number);
      seg.score_mandarin = parsed_score(l.fields[2], l.number);
      out.segments.push_back(std::move(seg));
      out.line_numbers.push_back(l.number);
    }
  }
  return out;
}

std::string write_predictions(const std::vector<ScoredSegment>& segments,
                              PredictionFormat format) {
  if (format == PredictionFormat::Auto) {
    throw ConfigError("write_predictions needs an explicit format");
  }
  std::ostringstream out;
  for (const ScoredSegment& seg : segments) {
    const std::string id = render_segment_id(seg.id);
    if (format == PredictionFormat::TwoLine) {
      out << id << " 0 " << format_double(seg.score_english) << '\n';
      out << id << " 1 " << format_double(seg.score_mandarin) << '\n';
    } else {
      out << id << ' ' << format_double(seg.score_english) << ' '
          << format_double(seg.score_mandarin) << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Task-2 language-turn files
// ---------------------------------------------------------------------------

bool parse_decimal_ms(std::string_view s, Ms* out) {
  const std::size_t dot = s.find('.');
  const std::string_view int_part = s.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
  if (int_part.empty() || int_part.size() > 15) return false;
  std::int64_t value = 0;
  for (char c : int_part) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  for (char c : frac) {
    if (c < '0' || c > '9') return false;
  }
  std::string_view digits = frac;
  while (!digits.empty() && digits.back() == '0') digits.remove_suffix(1);
  if (!digits.empty()) {
    const char head = digits.front();
    const bool tail_nonzero = digits.size() > 1;
    if (head > '5' || (head == '5' && tail_nonzero)) {
      ++value;
    } else if (head == '5') {
      if (value % 2 != 0) ++value;  // half to even
    }
  }
  *out = value;
  return true;
}

std::vector<LanguageTurn> parse_language_turns(std::string_view text) {
  std::vector<LanguageTurn> turns;
  for (const Line& l : nonblank_lines(text)) {
    if (l.fields.size() != 3) {
      throw ParseError("expected 3 space-delimited fields", l.number, "turn-format-error");
    }
    Ms boundary[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
      const std::string& field = l.fields[k];
      if (!field.empty() && field[0] == '-') {
        throw ParseError("negative time '" + field + "'", l.number, "invalid-turn-times");
      }
      if (!parse_decimal_ms(field, &boundary[k])) {
        throw ParseError("malformed time '" + field + "'", l.number, "turn-format-error");
      }
    }
    if (boundary[1] <= boundary[0]) {
      throw ParseError("turn end " + std::to_string(boundary[1]) +
                           " is not after start " + std::to_string(boundary[0]),
                       l.number, "invalid-turn-times");
    }
    LanguageTurn turn;
    turn.start = boundary[0];
    turn.end = boundary[1];
    if (l.fields[2] == "English") {
      turn.language = LanguageLabel::English;
    } else if (l.fields[2] == "Mandarin") {
      turn.language = LanguageLabel::Mandarin;
    } else {
      throw ParseError("unknown language id '" + l.fields[2] + "'", l.number,
                       "unknown-language");
    }
    turns.push_back(turn);
  }
  return turns;
}

std::string write_language_turns(const std::vector<LanguageTurn>& turns) {
  std::ostringstream out;
  for (const LanguageTurn& t : turns) {
    if (!is_target_language(t.language)) {
      throw Error("language turns must be English or Mandarin");
    }
    if (t.start < 0 || t.end <= t.start) {
      throw Error("language turn has an empty or negative span");
    }
    out << t.start << ".0 " << t.end << ".0 " << to_tag(t.language) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Submissions
// ---------------------------------------------------------------------------

namespace {

Submission open_zip_submission(const std::string& path, Task task) {
  const std::string filename = fs::path(path).filename().string();
  if (filename.find(' ') != std::string::npos) {
    throw SubmissionError("archive name '" + filename + "' contains spaces",
                          "archive-name-space");
  }
  const std::vector<ZipEntry> entries = zip_read(path);

  Submission sub;
  sub.source = path;
  if (task == Task::Lid) {
    const ZipEntry* prediction = nullptr;
    for (const ZipEntry& e : entries) {
      if (e.name.find('/') != std::string::npos) {
        if (fs::path(e.name).filename() == "prediction.txt") {
          throw SubmissionError("prediction.txt must sit at the archive root, found '" +
                                e.name + "'");
        }
        throw SubmissionError("unexpected nested entry '" + e.name + "'");
      }
      if (e.name == "prediction.txt") {
        prediction = &e;
      } else {
        throw SubmissionError("unexpected entry '" + e.name +
                              "'; the archive must contain exactly prediction.txt");
      }
    }
    if (!prediction) throw SubmissionError("archive contains no prediction.txt");
    sub.files["prediction.txt"] = prediction->data;
  } else {
    for (const ZipEntry& e : entries) {
      if (e.name.find('/') != std::string::npos) {
        throw SubmissionError("unexpected nested entry '" + e.name +
                              "'; turn files must sit at the archive root");
      }
      const fs::path name(e.name);
      if (name.extension() != ".txt") {
        throw SubmissionError("unexpected non-txt entry '" + e.name + "'");
      }
      const std::string stem = name.stem().string();
      if (!sub.files.emplace(stem, e.data).second) {
        throw SubmissionError("duplicate turn file for recording '" + stem + "'");
      }
    }
  }
  return sub;
}

Submission open_directory_submission(const std::string& path, Task task) {
  Submission sub;
  sub.source = path;
  if (task == Task::Lid) {
    const fs::path prediction = fs::path(path) / "prediction.txt";
    if (!fs::exists(prediction)) {
      throw SubmissionError("prediction.txt not found in directory " + path);
    }
    sub.files["prediction.txt"] = read_file(prediction.string());
  } else {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      if (entry.path().extension() != ".txt") continue;
      const std::string stem = entry.path().stem().string();
      if (!sub.files.emplace(stem, read_file(entry.path().string())).second) {
        throw SubmissionError("duplicate turn file for recording '" + stem + "'");
      }
    }
  }
  return sub;
}

}  // namespace

Submission open_submission(const std::string& path, Task task) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw IoError("no such file or directory: " + path);
  if (fs::is_directory(path, ec)) return open_directory_submission(path, task);
  if (looks_like_zip(path)) return open_zip_submission(path, task);
  if (task == Task::Ld) {
    throw SubmissionError(
        "a Task-2 submission must be a zip archive or a directory of turn files");
  }
  Submission sub;
  sub.source = path;
  sub.files["prediction.txt"] = read_file(path);
  return sub;
}

}  // namespace cseval
