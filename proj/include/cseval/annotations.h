// include/cseval/annotations.h

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

#ifndef CSEVAL_ANNOTATIONS_H_
#define CSEVAL_ANNOTATIONS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cseval/interval.h"

namespace cseval {

// The four labels that appear in challenge-ready annotations.
enum class LanguageLabel { English, Mandarin, NonEvaluatedSpeech, NonSpeech };

// Labels as they come out of the transcription protocol, before recoding.
enum class RawLabel {
  English,
  Mandarin,
  Languageless,
  RedDotDiscourse,
  RedDotVocab,
  NonEvaluatedSpeech,
  NonSpeech,
  Redacted,
};

std::string to_tag(LanguageLabel label);  // "English", "Mandarin", "Non-Speech", ...
std::optional<LanguageLabel> language_from_tag(std::string_view tag);
std::string to_tag(RawLabel label);
std::optional<RawLabel> raw_label_from_tag(std::string_view tag);

inline bool is_target_language(LanguageLabel l) {
  return l == LanguageLabel::English || l == LanguageLabel::Mandarin;
}

// One annotated language span, the atomic unit the scorers consume.
struct Grain {
  std::string audio_name;
  std::string utt_id;
  Interval span;
  LanguageLabel language = LanguageLabel::NonSpeech;
  bool overlap_diff_lang = false;

  bool operator==(const Grain&) const = default;
};

struct RawToken {
  int token_index = 0;
  Interval span;
  RawLabel label = RawLabel::NonSpeech;
};

struct Utterance {
  std::string audio_name;
  std::string speaker;
  std::string utt_id;
  std::vector<RawToken> tokens;  // ordered, non-overlapping
};

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

// Reference annotation CSV: one header row, then
//   audio_name, utt_id, start_ms, end_ms, language_tag, overlap_diff_lang
// The header is matched by position, never by text.  Rows are returned in
// file order.  Throws ParseError naming the offending row.
std::vector<Grain> parse_reference_csv(std::string_view text);
std::string write_reference_csv(const std::vector<Grain>& grains);

// Evaluated-regions CSV: three columns, no header: audio_name, start, end.
// A recording may appear on several rows; its regions must not overlap.
std::map<std::string, SpanSet> parse_evaluated_regions(std::string_view text);
std::string write_evaluated_regions(
    const std::map<std::string, std::vector<Interval>>& regions);

// Raw-token CSV (tool format, see docs/formats.md): one header row, then
//   audio_name, speaker, utt_id, token_index, start_ms, end_ms, raw_label
// Tokens of one utterance must be contiguous rows, ordered by token_index.
std::vector<Utterance> parse_raw_tokens_csv(std::string_view text);
std::string write_raw_tokens_csv(const std::vector<Utterance>& utterances);

// Generic exclusion-span CSV (same 3-column shape as evaluated regions);
// used for redaction holes that cannot be represented in the reference CSV.
std::map<std::string, SpanSet> parse_exclusions_csv(std::string_view text);
std::string write_exclusions_csv(const std::map<std::string, SpanSet>& spans);

// ---------------------------------------------------------------------------
// Recoding
// ---------------------------------------------------------------------------

// The target language with the greater total token duration for one speaker
// in one file; exact ties break to English (*tied set when provided).
// Throws MetricError if the speaker has no English/Mandarin token at all.
LanguageLabel speaker_main_language(std::span<const Utterance> utterances,
                                    bool* tied = nullptr);

struct LabeledSpan {
  Interval span;
  LanguageLabel label = LanguageLabel::NonSpeech;

  bool operator==(const LabeledSpan&) const = default;
};

struct RecodedUtterance {
  std::vector<LabeledSpan> grains;  // adjacent same-label spans merged
  std::vector<Interval> excluded;   // redaction holes removed from scoring
  std::vector<std::string> notes;   // tie-breaks taken while resolving
};

// Resolves Languageless / Red-Dot / Redacted tokens to challenge labels.
// Rules, in order:
//   1. Red-Dot discourse marker -> language of the nearest preceding
//      English/Mandarin token (none preceding: falls through to rule 2).
//   2. Languageless / Red-Dot vocab -> following segment's language if
//      first, preceding segment's language if last, the shared language
//      between same-language neighbours, otherwise the language with the
//      longest total duration in the utterance (tie -> English).
//   3. Utterance with no English/Mandarin token at all -> main_language.
//   4. Redacted token -> removed from scoring (returned in `excluded`)
//      when the utterance has a language label; an utterance that is
//      redacted end to end becomes a single Non-Speech grain.
RecodedUtterance recode_utterance(const Utterance& utterance,
                                  LanguageLabel main_language);

// Sets overlap_diff_lang on every grain that shares nonzero time with a
// grain of the other target language in the same recording.
void compute_overlap_flags(std::vector<Grain>& grains);

struct RecodeResult {
  std::vector<Grain> grains;                  // sorted, utt_ids reassigned
  std::map<std::string, SpanSet> exclusions;  // redaction holes per recording
  std::vector<std::string> notes;
};

// Full pipeline over a raw-token corpus: main language per (speaker, file),
// recode every utterance, sort by (audio, start, end), assign fresh utt_ids
// a1, a2, ... per recording, and set overlap flags.
RecodeResult recode_corpus(const std::vector<Utterance>& utterances);

// ---------------------------------------------------------------------------
// Corpus statistics
// ---------------------------------------------------------------------------

struct LanguageStats {
  std::int64_t segments = 0;
  Ms total_ms = 0;
  double median_ms = 0.0;
  double mean_ms = 0.0;
};

struct FileStats {
  std::string audio_name;
  Ms english_ms = 0;
  Ms mandarin_ms = 0;
  Ms nonspeech_ms = 0;
  Ms noneval_ms = 0;
  std::int64_t n_english = 0;
  std::int64_t n_mandarin = 0;
  double mandarin_proportion = 0.0;  // mandarin / (english + mandarin)
  bool one_language = false;
};

struct CorpusStats {
  std::int64_t recordings = 0;
  std::int64_t one_language_recordings = 0;
  LanguageStats english;
  LanguageStats mandarin;
  LanguageStats nonspeech;
  LanguageStats noneval;
  double mandarin_proportion_mean = 0.0;  // over recordings with target speech
  std::vector<FileStats> per_file;        // sorted by audio_name
  Ms regions_total_ms = -1;               // -1 when no regions file given
  std::int64_t regions_recordings = 0;
};

CorpusStats corpus_stats(const std::vector<Grain>& grains,
                         const std::map<std::string, SpanSet>* regions = nullptr);

// "16:09:27" style rendering, floored to whole seconds.
std::string format_hms(Ms total);

struct HistRow {
  LanguageLabel language;
  Ms bin_start = 0;
  Ms bin_end = 0;
  std::int64_t count = 0;
};

// Fixed-width grain-length bins per language (English and Mandarin only).
std::vector<HistRow> grain_length_histogram(const std::vector<Grain>& grains,
                                            Ms bin_ms = 100);
std::string write_histogram_csv(const std::vector<HistRow>& rows);

}  // namespace cseval

#endif  // CSEVAL_ANNOTATIONS_H_
