// src/report.cc

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

#include "cseval/report.h"

#include <zlib.h>

#include <cstdio>

#include "cseval/csv.h"
#include "cseval/error.h"

using nlohmann::json;

namespace cseval {

json to_json(const LidReport& report) {
  json j;
  j["kind"] = "lid";
  j["eer"] = report.eer;
  j["balanced_accuracy_macro"] = report.balanced_accuracy_macro;
  j["balanced_accuracy_pooled"] = report.balanced_accuracy_pooled;
  j["accuracy"] = report.accuracy;
  j["n_trials"] = report.n_trials;
  j["n_targets"] = report.n_targets;
  j["n_nontargets"] = report.n_nontargets;
  j["n_excluded_overlap"] = report.n_excluded_overlap;
  j["n_excluded_nonspeech"] = report.n_excluded_nonspeech;
  j["decisions_tied"] = report.decisions_tied;
  j["balanced_accuracy_per_file"] = json::array();
  for (const FileLidScore& f : report.per_file) {
    json jf;
    jf["audio_name"] = f.audio_name;
    jf["balanced_accuracy"] = f.balanced_accuracy;
    jf["n_english"] = f.n_english;
    jf["n_mandarin"] = f.n_mandarin;
    jf["single_language"] = f.single_language;
    if (f.n_english > 0) jf["recall_english"] = f.recall_english;
    if (f.n_mandarin > 0) jf["recall_mandarin"] = f.recall_mandarin;
    if (f.eer) jf["eer"] = *f.eer;
    j["balanced_accuracy_per_file"].push_back(std::move(jf));
  }
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j;
}

namespace {

json breakdown_to_json(const DerBreakdown& b) {
  return json{{"audio_name", b.audio_name},
              {"correct_ms", b.correct_ms},
              {"language_error_ms", b.language_error_ms},
              {"missed_ms", b.missed_ms},
              {"false_alarm_ms", b.false_alarm_ms},
              {"ref_speech_ms", b.ref_speech_ms},
              {"scored_region_ms", b.scored_region_ms},
              {"english_error_ms", b.english_error_ms},
              {"mandarin_error_ms", b.mandarin_error_ms},
              {"english_ref_ms", b.english_ref_ms},
              {"mandarin_ref_ms", b.mandarin_ref_ms},
              {"clipped_ms", b.clipped_ms}};
}

}  // namespace

json to_json(const LdReport& report) {
  json j;
  j["kind"] = "ld";
  j["der"] = report.der;
  j["language_error_rate"] = report.language_error_rate;
  j["missed_rate"] = report.missed_rate;
  j["false_alarm_rate"] = report.false_alarm_rate;
  j["english_error_rate"] = report.english_error_rate;
  j["mandarin_error_rate"] = report.mandarin_error_rate;
  j["english_error_rate_english_denom"] =
      report.english_error_rate_english_denom
          ? json(*report.english_error_rate_english_denom)
          : json(nullptr);
  j["mandarin_error_rate_mandarin_denom"] =
      report.mandarin_error_rate_mandarin_denom
          ? json(*report.mandarin_error_rate_mandarin_denom)
          : json(nullptr);
  j["denominator"] = to_string(report.denominator);
  j["denominator_ms"] = report.denominator_ms;
  j["totals"] = breakdown_to_json(report.totals);
  j["per_recording"] = json::array();
  for (const DerBreakdown& b : report.per_recording) {
    j["per_recording"].push_back(breakdown_to_json(b));
  }
  return j;
}

json to_json(const ValidationReport& report) {
  json j;
  j["valid"] = report.valid;
  j["task"] = report.task == Task::Lid ? 1 : 2;
  j["violations"] = json::array();
  for (const Violation& v : report.violations) {
    j["violations"].push_back(
        {{"rule", v.rule},
         {"severity", v.severity == Severity::Error ? "error" : "warning"},
         {"location", v.location},
         {"message", v.message}});
  }
  j["counts"] = {{"expected", report.counts.expected},
                 {"found", report.counts.found},
                 {"missing", report.counts.missing},
                 {"duplicated", report.counts.duplicated},
                 {"out_of_order", report.counts.out_of_order}};
  if (report.task == Task::Lid && report.counts.found > 0) {
    j["format"] = to_string(report.format_used);
  }
  return j;
}

json to_json(const CorpusStats& stats) {
  json j;
  j["recordings"] = stats.recordings;
  j["one_language_recordings"] = stats.one_language_recordings;
  auto lang = [](const LanguageStats& s) {
    return json{{"segments", s.segments},
                {"total_ms", s.total_ms},
                {"total_hms", format_hms(s.total_ms)},
                {"median_ms", s.median_ms},
                {"mean_ms", s.mean_ms}};
  };
  j["languages"] = {{"English", lang(stats.english)},
                    {"Mandarin", lang(stats.mandarin)},
                    {"Non-Speech", lang(stats.nonspeech)},
                    {"Non-Evaluated-Speech", lang(stats.noneval)}};
  j["mandarin_proportion_mean"] = stats.mandarin_proportion_mean;
  j["per_file"] = json::array();
  for (const FileStats& f : stats.per_file) {
    j["per_file"].push_back({{"audio_name", f.audio_name},
                             {"english_ms", f.english_ms},
                             {"mandarin_ms", f.mandarin_ms},
                             {"nonspeech_ms", f.nonspeech_ms},
                             {"noneval_ms", f.noneval_ms},
                             {"n_english", f.n_english},
                             {"n_mandarin", f.n_mandarin},
                             {"mandarin_proportion", f.mandarin_proportion},
                             {"one_language", f.one_language}});
  }
  if (stats.regions_total_ms >= 0) {
    j["regions"] = {{"recordings", stats.regions_recordings},
                    {"total_ms", stats.regions_total_ms},
                    {"total_hms", format_hms(stats.regions_total_ms)}};
  }
  return j;
}

std::string crc32_hex(std::string_view bytes) {
  const auto crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
            static_cast<uInt>(bytes.size())));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x", crc);
  return buf;
}

json to_json(const EvalReport& report) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = report.command;
  j["inputs"] = json::array();
  for (const auto& [role, path] : report.inputs) {
    json ji{{"role", role}, {"path", path}};
    try {
      ji["crc32"] = crc32_hex(read_file(path));
    } catch (const IoError&) {
      ji["crc32"] = nullptr;  // directories and unreadable inputs
    }
    j["inputs"].push_back(std::move(ji));
  }
  j["options"] = report.options;
  j["decisions"] = report.decisions;
  if (report.validation) j["validation"] = *report.validation;
  if (report.metrics) j["metrics"] = *report.metrics;
  if (report.wall_ms) j["timing"] = {{"wall_ms", *report.wall_ms}};
  return j;
}

}  // namespace cseval
