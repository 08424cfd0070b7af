// src/annotations.cc

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

#include "cseval/annotations.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cseval/csv.h"
#include "cseval/error.h"

namespace cseval {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Ms overlap_with(const SpanSet& set, const Interval& iv) {
  Ms total = 0;
  for (const Interval& s : set.spans()) {
    if (s.start >= iv.end) break;
    const Ms lo = std::max(s.start, iv.start);
    const Ms hi = std::min(s.end, iv.end);
    if (lo < hi) total += hi - lo;
  }
  return total;
}

}  // namespace

std::string to_tag(LanguageLabel label) {
  switch (label) {
    case LanguageLabel::English: return "English";
    case LanguageLabel::Mandarin: return "Mandarin";
    case LanguageLabel::NonEvaluatedSpeech: return "Non-Evaluated-Speech";
    case LanguageLabel::NonSpeech: return "Non-Speech";
  }
  return "Non-Speech";
}

std::optional<LanguageLabel> language_from_tag(std::string_view tag) {
  if (tag == "English") return LanguageLabel::English;
  if (tag == "Mandarin") return LanguageLabel::Mandarin;
  if (tag == "Non-Evaluated-Speech") return LanguageLabel::NonEvaluatedSpeech;
  if (tag == "Non-Speech") return LanguageLabel::NonSpeech;
  return std::nullopt;
}

std::string to_tag(RawLabel label) {
  switch (label) {
    case RawLabel::English: return "English";
    case RawLabel::Mandarin: return "Mandarin";
    case RawLabel::Languageless: return "Languageless";
    case RawLabel::RedDotDiscourse: return "RedDotDiscourse";
    case RawLabel::RedDotVocab: return "RedDotVocab";
    case RawLabel::NonEvaluatedSpeech: return "Non-Evaluated-Speech";
    case RawLabel::NonSpeech: return "Non-Speech";
    case RawLabel::Redacted: return "Redacted";
  }
  return "Non-Speech";
}

std::optional<RawLabel> raw_label_from_tag(std::string_view tag) {
  if (tag == "English") return RawLabel::English;
  if (tag == "Mandarin") return RawLabel::Mandarin;
  if (tag == "Languageless") return RawLabel::Languageless;
  if (tag == "RedDotDiscourse") return RawLabel::RedDotDiscourse;
  if (tag == "RedDotVocab") return RawLabel::RedDotVocab;
  if (tag == "Non-Evaluated-Speech") return RawLabel::NonEvaluatedSpeech;
  if (tag == "Non-Speech") return RawLabel::NonSpeech;
  if (tag == "Redacted") return RawLabel::Redacted;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

std::vector<Grain> parse_reference_csv(std::string_view text) {
  const std::vector<CsvRow> rows = parse_csv(text);
  if (rows.empty()) throw ParseError("reference CSV is empty");

  std::vector<Grain> grains;
  grains.reserve(rows.size() - 1);
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {  // rows[0] is the header
    const CsvRow& row = rows[r];
    if (row.fields.size() != 6) {
      throw ParseError("expected 6 columns, got " + std::to_string(row.fields.size()),
                       row.line);
    }
    Grain g;
    g.audio_name = row.fields[0];
    g.utt_id = row.fields[1];
    std::int64_t start = 0, end = 0;
    if (!parse_int_field(row.fields[2], &start) || !parse_int_field(row.fields[3], &end)) {
      throw ParseError("non-integer start/end time", row.line);
    }
    if (end <= start) {
      throw ParseError("empty or negative span [" + row.fields[2] + ", " +
                           row.fields[3] + ")",
                       row.line);
    }
    g.span = {start, end};
    const auto label = language_from_tag(row.fields[4]);
    if (!label) throw ParseError("unknown language tag '" + row.fields[4] + "'", row.line);
    g.language = *label;
    const std::string flag = lower(row.fields[5]);
    if (flag == "true") {
      g.overlap_diff_lang = true;
    } else if (flag == "false") {
      g.overlap_diff_lang = false;
    } else {
      throw ParseError("overlap flag must be True or False, got '" + row.fields[5] + "'",
                       row.line);
    }
    if (!seen.insert({g.audio_name, g.utt_id}).second) {
      throw ParseError("duplicate (audio_name, utt_id) pair " + g.audio_name + "/" +
                           g.utt_id,
                       row.line);
    }
    grains.push_back(std::move(g));
  }
  return grains;
}

std::string write_reference_csv(const std::vector<Grain>& grains) {
  std::ostringstream out;
  out << "audio_name,utt_id,start_ms,end_ms,language,overlap_diff_lang\n";
  for (const Grain& g : grains) {
    out << g.audio_name << ',' << g.utt_id << ',' << g.span.start << ',' << g.span.end
        << ',' << to_tag(g.language) << ',' << (g.overlap_diff_lang ? "True" : "False")
        << '\n';
  }
  return out.str();
}

std::map<std::string, SpanSet> parse_evaluated_regions(std::string_view text) {
  struct Row {
    Interval span;
    int line;
  };
  std::map<std::string, std::vector<Row>> per_audio;
  for (const CsvRow& row : parse_csv(text)) {
    if (row.fields.size() != 3) {
      throw ParseError("expected 3 columns, got " + std::to_string(row.fields.size()),
                       row.line);
    }
    std::int64_t start = 0, end = 0;
    if (!parse_int_field(row.fields[1], &start) || !parse_int_field(row.fields[2], &end)) {
      throw ParseError("non-integer region boundary", row.line);
    }
    if (end <= start) throw ParseError("empty or negative region", row.line);
    per_audio[row.fields[0]].push_back({{start, end}, row.line});
  }

  std::map<std::string, SpanSet> result;
  for (auto& [audio, regions] : per_audio) {
    std::sort(regions.begin(), regions.end(),
              [](const Row& a, const Row& b) { return a.span.start < b.span.start; });
    std::vector<Interval> spans;
    for (std::size_t i = 0; i < regions.size(); ++i) {
      if (i > 0 && regions[i].span.start < regions[i - 1].span.end) {
        throw ParseError("overlapping evaluated regions for " + audio, regions[i].line);
      }
      spans.push_back(regions[i].span);
    }
    result[audio] = normalize(spans);
  }
  return result;
}

std::string write_evaluated_regions(
    const std::map<std::string, std::vector<Interval>>& regions) {
  std::ostringstream out;
  for (const auto& [audio, spans] : regions) {
    for (const Interval& s : spans) {
      out << audio << ',' << s.start << ',' << s.end << '\n';
    }
  }
  return out.str();
}

std::vector<Utterance> parse_raw_tokens_csv(std::string_view text) {
  const std::vector<CsvRow> rows = parse_csv(text);
  if (rows.empty()) throw ParseError("raw-token CSV is empty");

  std::vector<Utterance> utterances;
  std::set<std::pair<std::string, std::string>> finished;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.fields.size() != 7) {
      throw ParseError("expected 7 columns, got " + std::to_string(row.fields.size()),
                       row.line);
    }
    std::int64_t index = 0, start = 0, end = 0;
    if (!parse_int_field(row.fields[3], &index)) {
      throw ParseError("non-integer token_index", row.line);
    }
    if (!parse_int_field(row.fields[4], &start) || !parse_int_field(row.fields[5], &end)) {
      throw ParseError("non-integer start/end time", row.line);
    }
    if (end <= start) throw ParseError("empty or negative token span", row.line);
    const auto label = raw_label_from_tag(row.fields[6]);
    if (!label) throw ParseError("unknown raw label '" + row.fields[6] + "'", row.line);

    const std::string& audio = row.fields[0];
    const std::string& speaker = row.fields[1];
    const std::string& utt_id = row.fields[2];
    const bool continues = !utterances.empty() && utterances.back().audio_name == audio &&
                           utterances.back().utt_id == utt_id;
    if (continues) {
      Utterance& u = utterances.back();
      if (u.speaker != speaker) {
        throw ParseError("utterance " + utt_id + " changes speaker mid-way", row.line);
      }
      if (index <= u.tokens.back().token_index) {
        throw ParseError("token_index not increasing in utterance " + utt_id, row.line);
      }
      u.tokens.push_back({static_cast<int>(index), {start, end}, *label});
    } else {
      if (!finished.insert({audio, utt_id}).second) {
        throw ParseError("utterance " + audio + "/" + utt_id + " rows are not contiguous",
                         row.line);
      }
      Utterance u;
      u.audio_name = audio;
      u.speaker = speaker;
      u.utt_id = utt_id;
      u.tokens.push_back({static_cast<int>(index), {start, end}, *label});
      utterances.push_back(std::move(u));
    }
  }
  return utterances;
}

std::string write_raw_tokens_csv(const std::vector<Utterance>& utterances) {
  std::ostringstream out;
  out << "audio_name,speaker,utt_id,token_index,start_ms,end_ms,raw_label\n";
  for (const Utterance& u : utterances) {
    for (const RawToken& t : u.tokens) {
      out << u.audio_name << ',' << u.speaker << ',' << u.utt_id << ',' << t.token_index
          << ',' << t.span.start << ',' << t.span.end << ',' << to_tag(t.label) << '\n';
    }
  }
  return out.str();
}

std::map<std::string, SpanSet> parse_exclusions_csv(std::string_view text) {
  std::map<std::string, std::vector<Interval>> per_audio;
  for (const CsvRow& row : parse_csv(text)) {
    if (row.fields.size() != 3) {
      throw ParseError("expected 3 columns, got " + std::to_string(row.fields.size()),
                       row.line);
    }
    std::int64_t start = 0, end = 0;
    if (!parse_int_field(row.fields[1], &start) || !parse_int_field(row.fields[2], &end)) {
      throw ParseError("non-integer exclusion boundary", row.line);
    }
    if (end <= start) throw ParseError("empty or negative exclusion span", row.line);
    per_audio[row.fields[0]].push_back({start, end});
  }
  std::map<std::string, SpanSet> result;
  for (auto& [audio, spans] : per_audio) result[audio] = normalize(spans);
  return result;
}

std::string write_exclusions_csv(const std::map<std::string, SpanSet>& spans) {
  std::ostringstream out;
  for (const auto& [audio, set] : spans) {
    for (const Interval& s : set.spans()) {
      out << audio << ',' << s.start << ',' << s.end << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Recoding
// ---------------------------------------------------------------------------

LanguageLabel speaker_main_language(std::span<const Utterance> utterances, bool* tied) {
  Ms english = 0, mandarin = 0;
  for (const Utterance& u : utterances) {
    for (const RawToken& t : u.tokens) {
      if (t.label == RawLabel::English) english += t.span.duration();
      if (t.label == RawLabel::Mandarin) mandarin += t.span.duration();
    }
  }
  if (tied) *tied = false;
  if (english == 0 && mandarin == 0) {
    throw MetricError("speaker has no English or Mandarin tokens; main language undeterminable");
  }
  if (english == mandarin) {
    if (tied) *tied = true;
    return LanguageLabel::English;
  }
  return english > mandarin ? LanguageLabel::English : LanguageLabel::Mandarin;
}

namespace {

bool is_raw_target(RawLabel l) {
  return l == RawLabel::English || l == RawLabel::Mandarin;
}

LanguageLabel raw_target_language(RawLabel l) {
  return l == RawLabel::English ? LanguageLabel::English : LanguageLabel::Mandarin;
}

// Languageless / Red-Dot resolution pool: Σ raw E vs M token duration, ties
// to English.
LanguageLabel longest_language(const std::vector<RawToken>& tokens, bool* tied) {
  Ms english = 0, mandarin = 0;
  for (const RawToken& t : tokens) {
    if (t.label == RawLabel::English) english += t.span.duration();
    if (t.label == RawLabel::Mandarin) mandarin += t.span.duration();
  }
  *tied = english == mandarin;
  return mandarin > english ? LanguageLabel::Mandarin : LanguageLabel::English;
}

}  // namespace

RecodedUtterance recode_utterance(const Utterance& utterance,
                                  LanguageLabel main_language) {
  const std::vector<RawToken>& tokens = utterance.tokens;
  if (tokens.empty()) throw Error("utterance " + utterance.utt_id + " has no tokens");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Interval& s = tokens[i].span;
    if (s.start < 0 || s.end <= s.start) {
      throw Error("utterance " + utterance.utt_id + ": malformed token span");
    }
    if (i > 0 && s.start < tokens[i - 1].span.end) {
      throw Error("utterance " + utterance.utt_id + ": tokens overlap or are out of order");
    }
  }

  RecodedUtterance result;

  const bool any_target = std::any_of(tokens.begin(), tokens.end(), [](const RawToken& t) {
    return is_raw_target(t.label);
  });
  const bool all_redacted = std::all_of(tokens.begin(), tokens.end(), [](const RawToken& t) {
    return t.label == RawLabel::Redacted;
  });

  if (all_redacted) {
    // End-to-end redaction: the whole utterance becomes Non-Speech.
    for (const RawToken& t : tokens) {
      if (!result.grains.empty() && result.grains.back().span.end == t.span.start) {
        result.grains.back().span.end = t.span.end;
      } else {
        result.grains.push_back({t.span, LanguageLabel::NonSpeech});
      }
    }
    return result;
  }

  auto preceding_target = [&](std::size_t i) -> std::optional<LanguageLabel> {
    for (std::size_t k = i; k-- > 0;) {
      if (is_raw_target(tokens[k].label)) return raw_target_language(tokens[k].label);
    }
    return std::nullopt;
  };
  auto following_target = [&](std::size_t i) -> std::optional<LanguageLabel> {
    for (std::size_t k = i + 1; k < tokens.size(); ++k) {
      if (is_raw_target(tokens[k].label)) return raw_target_language(tokens[k].label);
    }
    return std::nullopt;
  };

  auto resolve_positional = [&](std::size_t i) -> LanguageLabel {
    if (!any_target) return main_language;  // rule 3
    const auto prev = preceding_target(i);
    const auto next = following_target(i);
    if (!prev && next) return *next;  // first word
    if (prev && !next) return *prev;  // last word
    if (*prev == *next) return *prev;
    bool tied = false;
    const LanguageLabel winner = longest_language(tokens, &tied);
    if (tied) {
      result.notes.push_back("utterance " + utterance.utt_id +
                             ": language duration tie resolved to English");
    }
    return winner;
  };

  auto append = [&](const Interval& span, LanguageLabel label) {
    if (!result.grains.empty() && result.grains.back().label == label &&
        result.grains.back().span.end == span.start) {
      result.grains.back().span.end = span.end;
    } else {
      result.grains.push_back({span, label});
    }
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const RawToken& t = tokens[i];
    switch (t.label) {
      case RawLabel::English:
      case RawLabel::Mandarin:
        append(t.span, raw_target_language(t.label));
        break;
      case RawLabel::NonEvaluatedSpeech:
        append(t.span, LanguageLabel::NonEvaluatedSpeech);
        break;
      case RawLabel::NonSpeech:
        append(t.span, LanguageLabel::NonSpeech);
        break;
      case RawLabel::RedDotDiscourse: {
        const auto prev = preceding_target(i);
        append(t.span, prev ? *prev : resolve_positional(i));
        break;
      }
      case RawLabel::Languageless:
      case RawLabel::RedDotVocab:
        append(t.span, resolve_positional(i));
        break;
      case RawLabel::Redacted:
        if (any_target) {
          // The hole is cut out of the scoring region entirely.
          result.excluded.push_back(t.span);
        } else {
          append(t.span, LanguageLabel::NonSpeech);
        }
        break;
    }
  }
  return result;
}

void compute_overlap_flags(std::vector<Grain>& grains) {
  std::map<std::string, std::vector<std::size_t>> by_audio;
  for (std::size_t i = 0; i < grains.size(); ++i) {
    by_audio[grains[i].audio_name].push_back(i);
  }
  for (const auto& [audio, indices] : by_audio) {
    std::vector<Interval> english, mandarin;
    for (std::size_t i : indices) {
      if (grains[i].language == LanguageLabel::English) english.push_back(grains[i].span);
      if (grains[i].language == LanguageLabel::Mandarin) mandarin.push_back(grains[i].span);
    }
    const SpanSet english_set = normalize(english);
    const SpanSet mandarin_set = normalize(mandarin);
    for (std::size_t i : indices) {
      Grain& g = grains[i];
      switch (g.language) {
        case LanguageLabel::English:
          g.overlap_diff_lang = overlap_with(mandarin_set, g.span) > 0;
          break;
        case LanguageLabel::Mandarin:
          g.overlap_diff_lang = overlap_with(english_set, g.span) > 0;
          break;
        default:
          g.overlap_diff_lang = false;
          break;
      }
    }
  }
}

RecodeResult recode_corpus(const std::vector<Utterance>& utterances) {
  RecodeResult result;

  // Lazy main-language lookup per (audio, speaker): only utterances made of
  // Languageless / Red-Dot material need it.
  std::map<std::pair<std::string, std::string>, std::vector<Utterance>> by_speaker;
  for (const Utterance& u : utterances) {
    by_speaker[{u.audio_name, u.speaker}].push_back(u);
  }
  std::map<std::pair<std::string, std::string>, LanguageLabel> main_cache;
  auto main_for = [&](const Utterance& u) {
    const auto key = std::make_pair(u.audio_name, u.speaker);
    auto it = main_cache.find(key);
    if (it != main_cache.end()) return it->second;
    bool tied = false;
    const LanguageLabel main = speaker_main_language(by_speaker.at(key), &tied);
    if (tied) {
      result.notes.push_back("speaker " + u.speaker + " in " + u.audio_name +
                             ": main-language duration tie resolved to English");
    }
    main_cache[key] = main;
    return main;
  };

  std::map<std::string, std::vector<LabeledSpan>> grains_by_audio;
  std::map<std::string, std::vector<Interval>> excluded_by_audio;
  for (const Utterance& u : utterances) {
    const bool needs_main =
        std::none_of(u.tokens.begin(), u.tokens.end(),
                     [](const RawToken& t) { return is_raw_target(t.label); }) &&
        std::any_of(u.tokens.begin(), u.tokens.end(), [](const RawToken& t) {
          return t.label == RawLabel::Languageless || t.label == RawLabel::RedDotDiscourse ||
                 t.label == RawLabel::RedDotVocab;
        });
    RecodedUtterance rec =
        recode_utterance(u, needs_main ? main_for(u) : LanguageLabel::English);
    for (std::string& note : rec.notes) {
      result.notes.push_back(u.audio_name + ": " + note);
    }
    auto& spans = grains_by_audio[u.audio_name];
    spans.insert(spans.end(), rec.grains.begin(), rec.grains.end());
    auto& holes = excluded_by_audio[u.audio_name];
    holes.insert(holes.end(), rec.excluded.begin(), rec.excluded.end());
  }

  for (auto& [audio, spans] : grains_by_audio) {
    std::stable_sort(spans.begin(), spans.end(),
                     [](const LabeledSpan& a, const LabeledSpan& b) {
                       if (a.span.start != b.span.start) return a.span.start < b.span.start;
                       if (a.span.end != b.span.end) return a.span.end < b.span.end;
                       return static_cast<int>(a.label) < static_cast<int>(b.label);
                     });
    int n = 0;
    for (const LabeledSpan& s : spans) {
      Grain g;
      g.audio_name = audio;
      g.utt_id = "a" + std::to_string(++n);
      g.span = s.span;
      g.language = s.label;
      result.grains.push_back(std::move(g));
    }
  }
  compute_overlap_flags(result.grains);

  for (auto& [audio, holes] : excluded_by_audio) {
    if (holes.empty()) continue;
    result.exclusions[audio] = normalize(holes);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Corpus statistics
// ---------------------------------------------------------------------------

namespace {

LanguageStats summarize(std::vector<Ms>& lengths) {
  LanguageStats stats;
  stats.segments = static_cast<std::int64_t>(lengths.size());
  for (Ms l : lengths) stats.total_ms += l;
  if (!lengths.empty()) {
    std::sort(lengths.begin(), lengths.end());
    const std::size_t n = lengths.size();
    stats.median_ms = (n % 2 == 1)
                          ? static_cast<double>(lengths[n / 2])
                          : (static_cast<double>(lengths[n / 2 - 1]) +
                             static_cast<double>(lengths[n / 2])) /
                                2.0;
    stats.mean_ms = static_cast<double>(stats.total_ms) / static_cast<double>(n);
  }
  return stats;
}

}  // namespace

CorpusStats corpus_stats(const std::vector<Grain>& grains,
                         const std::map<std::string, SpanSet>* regions) {
  CorpusStats stats;
  std::map<std::string, FileStats> per_file;
  std::vector<Ms> english_lengths, mandarin_lengths, nonspeech_lengths, noneval_lengths;

  for (const Grain& g : grains) {
    FileStats& f = per_file[g.audio_name];
    f.audio_name = g.audio_name;
    const Ms dur = g.span.duration();
    switch (g.language) {
      case LanguageLabel::English:
        f.english_ms += dur;
        ++f.n_english;
        english_lengths.push_back(dur);
        break;
      case LanguageLabel::Mandarin:
        f.mandarin_ms += dur;
        ++f.n_mandarin;
        mandarin_lengths.push_back(dur);
        break;
      case LanguageLabel::NonSpeech:
        f.nonspeech_ms += dur;
        nonspeech_lengths.push_back(dur);
        break;
      case LanguageLabel::NonEvaluatedSpeech:
        f.noneval_ms += dur;
        noneval_lengths.push_back(dur);
        break;
    }
  }

  stats.recordings = static_cast<std::int64_t>(per_file.size());
  double proportion_sum = 0.0;
  std::int64_t proportion_n = 0;
  for (auto& [audio, f] : per_file) {
    const Ms target = f.english_ms + f.mandarin_ms;
    if (target > 0) {
      f.mandarin_proportion = static_cast<double>(f.mandarin_ms) / static_cast<double>(target);
      proportion_sum += f.mandarin_proportion;
      ++proportion_n;
    }
    f.one_language = (f.n_english > 0) != (f.n_mandarin > 0);
    if (f.one_language) ++stats.one_language_recordings;
    stats.per_file.push_back(f);
  }
  if (proportion_n > 0) stats.mandarin_proportion_mean = proportion_sum / proportion_n;

  stats.english = summarize(english_lengths);
  stats.mandarin = summarize(mandarin_lengths);
  stats.nonspeech = summarize(nonspeech_lengths);
  stats.noneval = summarize(noneval_lengths);

  if (regions) {
    stats.regions_total_ms = 0;
    stats.regions_recordings = static_cast<std::int64_t>(regions->size());
    for (const auto& [audio, set] : *regions) stats.regions_total_ms += set.total_duration();
  }
  return stats;
}

std::string format_hms(Ms total) {
  const Ms seconds = total / 1000;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld",
                static_cast<long long>(seconds / 3600),
                static_cast<long long>((seconds / 60) % 60),
                static_cast<long long>(seconds % 60));
  return buf;
}

std::vector<HistRow> grain_length_histogram(const std::vector<Grain>& grains, Ms bin_ms) {
  if (bin_ms <= 0) throw ConfigError("histogram bin width must be positive");
  std::vector<HistRow> rows;
  for (LanguageLabel lang : {LanguageLabel::English, LanguageLabel::Mandarin}) {
    std::vector<std::int64_t> bins;
    for (const Grain& g : grains) {
      if (g.language != lang) continue;
      const std::size_t bin = static_cast<std::size_t>(g.span.duration() / bin_ms);
      if (bins.size() <= bin) bins.resize(bin + 1, 0);
      ++bins[bin];
    }
    for (std::size_t b = 0; b < bins.size(); ++b) {
      rows.push_back({lang, static_cast<Ms>(b) * bin_ms, static_cast<Ms>(b + 1) * bin_ms,
                      bins[b]});
    }
  }
  return rows;
}

std::string write_histogram_csv(const std::vector<HistRow>& rows) {
  std::ostringstream out;
  out << "language,bin_start_ms,bin_end_ms,count\n";
  for (const HistRow& r : rows) {
    out << to_tag(r.language) << ',' << r.bin_start << ',' << r.bin_end << ',' << r.count
        << '\n';
  }
  return out.str();
}

}  // namespace cseval
