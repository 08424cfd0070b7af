// src/fixtures.cc

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

#include "cseval/fixtures.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include <json.hpp>

#include "cseval/csv.h"
#include "cseval/error.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace cseval {

namespace {

// Deterministic across platforms: raw mt19937_64 output only, no
// library-defined distributions.
struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  std::mt19937_64 gen;

  double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return u01() < p; }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    double u1 = u01();
    while (u1 <= 1e-300) u1 = u01();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
  }

  Ms lognormal_ms(double median, double sigma, Ms lo, Ms hi) {
    const double v = std::exp(std::log(median) + sigma * normal());
    return std::clamp<Ms>(static_cast<Ms>(std::llround(v)), lo, hi);
  }
};

constexpr Ms kMinTokenMs = 120;

struct Builder {
  const FixtureConfig& cfg;
  Rng& rng;
  GeneratedRecording rec;
  int utt_counter = 0;
  // (span, label) ground truth accumulated in construction order, kept
  // aligned with what recoding the raw tokens must reproduce.
  std::vector<LabeledSpan> truth;
  std::vector<std::size_t> rule3_truth_slots;  // resolved after pass 1

  std::string next_utt_id() { return "u" + std::to_string(++utt_counter); }

  Ms grain_length(LanguageLabel lang) {
    const double median = lang == LanguageLabel::Mandarin ? cfg.mandarin_median_ms
                                                          : cfg.english_median_ms;
    return rng.lognormal_ms(median, cfg.length_sigma, 150, 12'000);
  }

  Utterance& start_utterance(const std::string& speaker) {
    Utterance u;
    u.audio_name = rec.audio_name;
    u.speaker = speaker;
    u.utt_id = next_utt_id();
    rec.raw_utterances.push_back(std::move(u));
    return rec.raw_utterances.back();
  }

  static void push_token(Utterance& u, Interval span, RawLabel label) {
    u.tokens.push_back({static_cast<int>(u.tokens.size()), span, label});
  }
};

RawLabel raw_of(LanguageLabel lang) {
  return lang == LanguageLabel::English ? RawLabel::English : RawLabel::Mandarin;
}

// Resolution rule shared with the annotation recoder: total raw-token
// duration per target language in the utterance, ties to English.
LanguageLabel utterance_longest_language(const Utterance& u) {
  Ms english = 0, mandarin = 0;
  for (const RawToken& t : u.tokens) {
    if (t.label == RawLabel::English) english += t.span.duration();
    if (t.label == RawLabel::Mandarin) mandarin += t.span.duration();
  }
  return mandarin > english ? LanguageLabel::Mandarin : LanguageLabel::English;
}

// One speech utterance: 1-3 language grains, optional raw decorations and a
// possible redaction hole.  Appends ground-truth spans and the raw tokens.
Ms emit_speech_utterance(Builder& b, Ms cursor, const std::string& speaker) {
  const FixtureConfig& cfg = b.cfg;
  Rng& rng = b.rng;

  int n_segments = 1;
  if (rng.chance(0.3)) n_segments += static_cast<int>(rng.uniform(1, 2));

  LanguageLabel lang = rng.chance(cfg.mandarin_proportion) ? LanguageLabel::Mandarin
                                                           : LanguageLabel::English;
  struct Segment {
    Interval span;
    LanguageLabel lang;
  };
  std::vector<Segment> segments;
  Ms t = cursor;
  for (int s = 0; s < n_segments; ++s) {
    const Ms len = b.grain_length(lang);
    segments.push_back({{t, t + len}, lang});
    t += len;
    lang = lang == LanguageLabel::English ? LanguageLabel::Mandarin : LanguageLabel::English;
  }

  Utterance& u = b.start_utterance(speaker);

  // Full-utterance redaction turns everything into one Non-Speech grain.
  if (cfg.redaction_rate > 0 && rng.chance(cfg.redaction_rate * 0.25)) {
    const Interval whole{segments.front().span.start, segments.back().span.end};
    Builder::push_token(u, whole, RawLabel::Redacted);
    b.truth.push_back({whole, LanguageLabel::NonSpeech});
    return whole.end;
  }

  // Optional partial redaction: cut a hole out of one long-enough segment.
  int redacted_segment = -1;
  Interval hole{0, 0};
  if (cfg.redaction_rate > 0 && rng.chance(cfg.redaction_rate)) {
    for (int s = 0; s < n_segments; ++s) {
      if (segments[s].span.duration() >= 3 * kMinTokenMs + 100) {
        redacted_segment = s;
        const Ms len = std::min<Ms>(400, segments[s].span.duration() / 3);
        const Ms start = segments[s].span.start +
                         rng.uniform(kMinTokenMs, segments[s].span.duration() - len -
                                                      kMinTokenMs);
        hole = {start, start + len};
        break;
      }
    }
  }

  // Optional Languageless / Red-Dot decoration, chosen so recoding restores
  // the original segment labels (or moves a boundary we also move here).
  enum class Deco { None, Lead, TrailDiscourse, TrailVocab, MidSame, MidBoundary };
  Deco deco = Deco::None;
  if (rng.chance(cfg.decoration_rate)) {
    switch (rng.uniform(0, 4)) {
      case 0: deco = Deco::Lead; break;
      case 1: deco = Deco::TrailDiscourse; break;
      case 2: deco = Deco::TrailVocab; break;
      case 3: deco = Deco::MidSame; break;
      default: deco = Deco::MidBoundary; break;
    }
  }
  // A boundary wedge needs a code switch, no redaction in the utterance,
  // and enough first-segment time to carve from.
  Ms wedge = 0;
  if (deco == Deco::MidBoundary) {
    wedge = std::min<Ms>(250, segments[0].span.duration() / 3);
    if (n_segments < 2 || redacted_segment != -1 || wedge < kMinTokenMs) {
      deco = Deco::None;
      wedge = 0;
    }
  }

  std::vector<LabeledSpan> local_truth;
  for (int s = 0; s < n_segments; ++s) {
    const Segment& seg = segments[s];
    const Interval span = seg.span;

    if (s == redacted_segment) {
      Builder::push_token(u, {span.start, hole.start}, raw_of(seg.lang));
      Builder::push_token(u, hole, RawLabel::Redacted);
      Builder::push_token(u, {hole.end, span.end}, raw_of(seg.lang));
      local_truth.push_back({{span.start, hole.start}, seg.lang});
      local_truth.push_back({{hole.end, span.end}, seg.lang});
      b.rec.exclusions.push_back(hole);
      continue;
    }

    if (deco == Deco::Lead && s == 0) {
      const Ms head = std::min<Ms>(300, span.duration() / 3);
      if (head >= kMinTokenMs) {
        Builder::push_token(u, {span.start, span.start + head}, RawLabel::Languageless);
        Builder::push_token(u, {span.start + head, span.end}, raw_of(seg.lang));
        local_truth.push_back({span, seg.lang});
        continue;
      }
    }
    if ((deco == Deco::TrailDiscourse || deco == Deco::TrailVocab) &&
        s == n_segments - 1) {
      const Ms tail = std::min<Ms>(250, span.duration() / 3);
      if (tail >= kMinTokenMs) {
        Builder::push_token(u, {span.start, span.end - tail}, raw_of(seg.lang));
        Builder::push_token(u, {span.end - tail, span.end},
                            deco == Deco::TrailDiscourse ? RawLabel::RedDotDiscourse
                                                         : RawLabel::RedDotVocab);
        local_truth.push_back({span, seg.lang});
        continue;
      }
    }
    if (deco == Deco::MidSame && s == 0 && span.duration() >= 3 * kMinTokenMs) {
      const Ms third = span.duration() / 3;
      Builder::push_token(u, {span.start, span.start + third}, raw_of(seg.lang));
      Builder::push_token(u, {span.start + third, span.start + 2 * third},
                          RawLabel::Languageless);
      Builder::push_token(u, {span.start + 2 * third, span.end}, raw_of(seg.lang));
      local_truth.push_back({span, seg.lang});
      continue;
    }
    if (deco == Deco::MidBoundary && s == 0) {
      Builder::push_token(u, {span.start, span.end - wedge}, raw_of(seg.lang));
      Builder::push_token(u, {span.end - wedge, span.end}, RawLabel::Languageless);
      local_truth.push_back({span, seg.lang});  // fixed up below if the wedge flips
      continue;
    }

    Builder::push_token(u, span, raw_of(seg.lang));
    local_truth.push_back({span, seg.lang});
  }

  // The wedge sits between two different languages, so it joins whichever
  // language dominates the utterance; move the ground-truth boundary when
  // that is the right-hand side.
  if (wedge > 0 && utterance_longest_language(u) != segments[0].lang) {
    local_truth[0].span.end -= wedge;
    local_truth[1].span.start -= wedge;
  }

  b.truth.insert(b.truth.end(), local_truth.begin(), local_truth.end());
  return segments.back().span.end;
}

}  // namespace

Corpus generate_corpus(const FixtureConfig& cfg) {
  if (cfg.recordings < 1) throw ConfigError("recordings must be >= 1");
  if (cfg.grains_min < 1 || cfg.grains_max < cfg.grains_min) {
    throw ConfigError("grains_per_recording range is invalid");
  }
  if (cfg.regions_per_recording < 1 || cfg.regions_per_recording > 2) {
    throw ConfigError("regions_per_recording must be 1 or 2");
  }
  for (double rate : {cfg.mandarin_proportion, cfg.overlap_injection_rate,
                      cfg.nonspeech_rate, cfg.noneval_rate, cfg.redaction_rate,
                      cfg.decoration_rate, cfg.rule3_rate, cfg.region_clip_rate}) {
    if (rate < 0.0 || rate > 1.0) throw ConfigError("rates must lie in [0, 1]");
  }
  if (cfg.english_median_ms < kMinTokenMs || cfg.mandarin_median_ms < kMinTokenMs) {
    throw ConfigError("median grain lengths must be at least 120 ms");
  }
  if (cfg.max_recording_ms < 5000) {
    throw ConfigError("max_recording_ms too small to fit a region around any grain");
  }

  Corpus corpus;
  corpus.config = cfg;
  Rng rng(cfg.seed);

  for (int r = 0; r < cfg.recordings; ++r) {
    Builder b{cfg, rng, {}, 0, {}, {}};
    char name[32];
    std::snprintf(name, sizeof(name), "rec_%03d.wav", r);
    b.rec.audio_name = name;

    const int grain_target = static_cast<int>(rng.uniform(cfg.grains_min, cfg.grains_max));
    Ms cursor = rng.uniform(0, 600);
    bool speaker_has_target = false;

    while (static_cast<int>(b.truth.size()) < grain_target &&
           cursor < cfg.max_recording_ms - 3000) {
      cursor += rng.uniform(80, 400);
      const double kind = rng.u01();
      if (kind < cfg.nonspeech_rate) {
        Utterance& u = b.start_utterance("spk1");
        const Ms len = rng.lognormal_ms(600.0, 0.6, 150, 4000);
        Builder::push_token(u, {cursor, cursor + len}, RawLabel::NonSpeech);
        b.truth.push_back({{cursor, cursor + len}, LanguageLabel::NonSpeech});
        cursor += len;
      } else if (kind < cfg.nonspeech_rate + cfg.noneval_rate) {
        Utterance& u = b.start_utterance("spk1");
        const Ms len = rng.lognormal_ms(800.0, 0.6, 150, 4000);
        Builder::push_token(u, {cursor, cursor + len}, RawLabel::NonEvaluatedSpeech);
        b.truth.push_back({{cursor, cursor + len}, LanguageLabel::NonEvaluatedSpeech});
        cursor += len;
      } else if (kind < cfg.nonspeech_rate + cfg.noneval_rate + cfg.rule3_rate &&
                 speaker_has_target) {
        Utterance& u = b.start_utterance("spk1");
        const Ms len = rng.uniform(250, 700);
        Builder::push_token(u, {cursor, cursor + len}, RawLabel::Languageless);
        b.truth.push_back({{cursor, cursor + len}, LanguageLabel::English});  // placeholder
        b.rule3_truth_slots.push_back(b.truth.size() - 1);
        cursor += len;
      } else {
        cursor = emit_speech_utterance(b, cursor, "spk1");
        speaker_has_target = true;
      }
    }
    if (!speaker_has_target) {
      cursor += rng.uniform(80, 400);
      cursor = emit_speech_utterance(b, cursor, "spk1");
    }

    // Overlap injection: a second speaker's grain in the other language.
    const std::size_t n_base = b.truth.size();
    for (std::size_t i = 0; i < n_base; ++i) {
      const LabeledSpan base = b.truth[i];
      if (!is_target_language(base.label)) continue;
      if (!rng.chance(cfg.overlap_injection_rate)) continue;
      const LanguageLabel other = base.label == LanguageLabel::English
                                      ? LanguageLabel::Mandarin
                                      : LanguageLabel::English;
      const Ms dur = base.span.duration();
      const Ms start = base.span.start + rng.uniform(0, std::max<Ms>(1, dur / 2));
      const Ms len = rng.lognormal_ms(
          other == LanguageLabel::Mandarin ? cfg.mandarin_median_ms : cfg.english_median_ms,
          cfg.length_sigma, 150, 12'000);
      Utterance& u = b.start_utterance("spk2");
      Builder::push_token(u, {start, start + len}, raw_of(other));
      b.truth.push_back({{start, start + len}, other});
    }

    // Rule-3 placeholders: the speaker's main language over the whole file.
    if (!b.rule3_truth_slots.empty()) {
      Ms english = 0, mandarin = 0;
      for (const Utterance& u : b.rec.raw_utterances) {
        if (u.speaker != "spk1") continue;
        for (const RawToken& t : u.tokens) {
          if (t.label == RawLabel::English) english += t.span.duration();
          if (t.label == RawLabel::Mandarin) mandarin += t.span.duration();
        }
      }
      const LanguageLabel main =
          mandarin > english ? LanguageLabel::Mandarin : LanguageLabel::English;
      for (std::size_t slot : b.rule3_truth_slots) b.truth[slot].label = main;
    }

    // Evaluated regions around everything, optionally nibbling into the
    // first/last grain to exercise clipping.
    Ms span_lo = b.truth.front().span.start;
    Ms span_hi = 0;
    for (const LabeledSpan& s : b.truth) {
      span_lo = std::min(span_lo, s.span.start);
      span_hi = std::max(span_hi, s.span.end);
    }
    Ms region_lo = std::max<Ms>(0, span_lo - rng.uniform(50, 300));
    Ms region_hi = span_hi + rng.uniform(50, 300);
    if (rng.chance(cfg.region_clip_rate)) region_lo = span_lo + rng.uniform(1, 150);
    if (rng.chance(cfg.region_clip_rate)) region_hi = span_hi - rng.uniform(1, 150);
    if (region_hi - region_lo < 1000) region_hi = region_lo + 1000;

    if (cfg.regions_per_recording == 2) {
      // Split at the widest gap between ground-truth spans, if any is wide
      // enough to hold a hole; otherwise cut a hole out of the middle.
      std::vector<Interval> sorted_spans;
      for (const LabeledSpan& s : b.truth) sorted_spans.push_back(s.span);
      std::sort(sorted_spans.begin(), sorted_spans.end(),
                [](const Interval& a, const Interval& c) { return a.start < c.start; });
      Ms best_gap_lo = 0, best_gap = 0, reach = sorted_spans.front().end;
      for (const Interval& s : sorted_spans) {
        if (s.start > reach && s.start - reach > best_gap) {
          best_gap = s.start - reach;
          best_gap_lo = reach;
        }
        reach = std::max(reach, s.end);
      }
      Ms cut_lo, cut_hi;
      if (best_gap >= 3) {
        cut_lo = best_gap_lo + best_gap / 3;
        cut_hi = best_gap_lo + 2 * best_gap / 3;
      } else {
        cut_lo = (region_lo + region_hi) / 2;
        cut_hi = cut_lo + std::max<Ms>(1, (region_hi - region_lo) / 20);
      }
      if (cut_hi >= region_hi) cut_hi = region_hi - 1;
      if (cut_lo >= cut_hi) cut_lo = cut_hi - 1;
      if (cut_lo > region_lo && cut_hi < region_hi) {
        b.rec.regions.push_back({region_lo, cut_lo});
        b.rec.regions.push_back({cut_hi, region_hi});
      } else {
        b.rec.regions.push_back({region_lo, region_hi});
      }
    } else {
      b.rec.regions.push_back({region_lo, region_hi});
    }

    // Ground truth grains: identical ordering and utt_id scheme to the
    // recoding pipeline, then overlap flags by direct pairwise check.
    std::stable_sort(b.truth.begin(), b.truth.end(),
                     [](const LabeledSpan& a, const LabeledSpan& c) {
                       if (a.span.start != c.span.start) return a.span.start < c.span.start;
                       if (a.span.end != c.span.end) return a.span.end < c.span.end;
                       return static_cast<int>(a.label) < static_cast<int>(c.label);
                     });
    int n = 0;
    for (const LabeledSpan& s : b.truth) {
      Grain g;
      g.audio_name = b.rec.audio_name;
      g.utt_id = "a" + std::to_string(++n);
      g.span = s.span;
      g.language = s.label;
      b.rec.grains.push_back(std::move(g));
    }
    for (Grain& g : b.rec.grains) {
      if (!is_target_language(g.language)) continue;
      for (const Grain& o : b.rec.grains) {
        if (&o == &g || !is_target_language(o.language) || o.language == g.language) {
          continue;
        }
        if (g.span.overlaps(o.span)) {
          g.overlap_diff_lang = true;
          break;
        }
      }
    }
    std::sort(b.rec.exclusions.begin(), b.rec.exclusions.end(),
              [](const Interval& a, const Interval& c) { return a.start < c.start; });
    corpus.recordings.push_back(std::move(b.rec));
  }
  return corpus;
}

std::string corpus_manifest_json(const Corpus& corpus) {
  const FixtureConfig& cfg = corpus.config;
  json manifest;
  manifest["config"] = {
      {"seed", cfg.seed},
      {"recordings", cfg.recordings},
      {"grains_min", cfg.grains_min},
      {"grains_max", cfg.grains_max},
      {"mandarin_proportion", cfg.mandarin_proportion},
      {"english_median_ms", cfg.english_median_ms},
      {"mandarin_median_ms", cfg.mandarin_median_ms},
      {"length_sigma", cfg.length_sigma},
      {"overlap_injection_rate", cfg.overlap_injection_rate},
      {"nonspeech_rate", cfg.nonspeech_rate},
      {"noneval_rate", cfg.noneval_rate},
      {"redaction_rate", cfg.redaction_rate},
      {"decoration_rate", cfg.decoration_rate},
      {"rule3_rate", cfg.rule3_rate},
      {"regions_per_recording", cfg.regions_per_recording},
      {"region_clip_rate", cfg.region_clip_rate},
      {"max_recording_ms", cfg.max_recording_ms},
  };
  manifest["recordings"] = json::array();
  for (const GeneratedRecording& rec : corpus.recordings) {
    json jr;
    jr["audio_name"] = rec.audio_name;
    jr["regions"] = json::array();
    for (const Interval& s : rec.regions) jr["regions"].push_back({s.start, s.end});
    jr["exclusions"] = json::array();
    for (const Interval& s : rec.exclusions) jr["exclusions"].push_back({s.start, s.end});
    jr["grains"] = json::array();
    for (const Grain& g : rec.grains) {
      jr["grains"].push_back({{"utt_id", g.utt_id},
                              {"start", g.span.start},
                              {"end", g.span.end},
                              {"language", to_tag(g.language)},
                              {"overlap_diff_lang", g.overlap_diff_lang}});
    }
    manifest["recordings"].push_back(std::move(jr));
  }
  return manifest.dump(2) + "\n";
}

void write_corpus(const Corpus& corpus, const std::string& dir) {
  fs::create_directories(dir);

  std::vector<Grain> grains;
  std::map<std::string, std::vector<Interval>> regions;
  std::map<std::string, SpanSet> exclusions;
  std::vector<Utterance> utterances;
  for (const GeneratedRecording& rec : corpus.recordings) {
    grains.insert(grains.end(), rec.grains.begin(), rec.grains.end());
    regions[rec.audio_name] = rec.regions;
    if (!rec.exclusions.empty()) exclusions[rec.audio_name] = normalize(rec.exclusions);
    utterances.insert(utterances.end(), rec.raw_utterances.begin(),
                      rec.raw_utterances.end());
  }

  write_file((fs::path(dir) / "reference.csv").string(), write_reference_csv(grains));
  write_file((fs::path(dir) / "regions.csv").string(), write_evaluated_regions(regions));
  write_file((fs::path(dir) / "raw_tokens.csv").string(), write_raw_tokens_csv(utterances));
  write_file((fs::path(dir) / "exclusions.csv").string(), write_exclusions_csv(exclusions));
  write_file((fs::path(dir) / "manifest.json").string(), corpus_manifest_json(corpus));
}

GeneratedHypothesis generate_hypothesis(const Corpus& corpus, const HypothesisNoise& noise,
                                        std::uint64_t seed) {
  Rng rng(seed);
  GeneratedHypothesis hyp;

  for (const GeneratedRecording& rec : corpus.recordings) {
    // Task 1: one scored segment per eligible grain, reference order.
    for (const Grain& g : rec.grains) {
      if (!is_target_language(g.language) || g.overlap_diff_lang) continue;
      const double margin = 0.5 + 4.0 * rng.u01();
      const bool flip = rng.chance(noise.label_flip_rate);
      const bool say_english = (g.language == LanguageLabel::English) != flip;
      ScoredSegment seg;
      seg.id = segment_id_for(g);
      seg.score_english = say_english ? margin : -margin;
      seg.score_mandarin = say_english ? -margin : margin;
      hyp.predictions.push_back(std::move(seg));
    }

    // Task 2: the reference language timelines, perturbed.
    std::vector<Interval> english, mandarin;
    Ms reach = 0;
    for (const Grain& g : rec.grains) {
      if (g.language == LanguageLabel::English) english.push_back(g.span);
      if (g.language == LanguageLabel::Mandarin) mandarin.push_back(g.span);
      reach = std::max(reach, g.span.end);
    }
    std::vector<LanguageTurn> turns;
    for (const auto& [lang, spans] :
         {std::pair{LanguageLabel::English, normalize(english)},
          std::pair{LanguageLabel::Mandarin, normalize(mandarin)}}) {
      for (const Interval& s : spans.spans()) {
        if (rng.chance(noise.deletion_rate)) continue;
        LanguageTurn t;
        t.start = s.start;
        t.end = s.end;
        t.language = lang;
        if (noise.boundary_jitter_ms > 0) {
          const Ms j = static_cast<Ms>(noise.boundary_jitter_ms);
          t.start = std::max<Ms>(0, t.start + rng.uniform(-j, j));
          t.end = t.end + rng.uniform(-j, j);
          if (t.end <= t.start) t.end = t.start + 1;
        }
        if (rng.chance(noise.label_flip_rate)) {
          t.language = t.language == LanguageLabel::English ? LanguageLabel::Mandarin
                                                            : LanguageLabel::English;
        }
        turns.push_back(t);
        if (rng.chance(noise.insertion_rate)) {
          LanguageTurn extra;
          const Ms len = rng.lognormal_ms(500.0, 0.6, 100, 4000);
          extra.start = rng.uniform(0, std::max<Ms>(1, reach));
          extra.end = extra.start + len;
          extra.language =
              rng.chance(0.5) ? LanguageLabel::English : LanguageLabel::Mandarin;
          turns.push_back(extra);
        }
      }
    }
    std::sort(turns.begin(), turns.end(),
              [](const LanguageTurn& a, const LanguageTurn& b) {
                if (a.start != b.start) return a.start < b.start;
                if (a.end != b.end) return a.end < b.end;
                return static_cast<int>(a.language) < static_cast<int>(b.language);
              });
    hyp.turns[audio_stem(rec.audio_name)] = std::move(turns);
  }
  return hyp;
}

void write_hypothesis(const GeneratedHypothesis& hyp, const std::string& dir,
                      PredictionFormat format) {
  fs::create_directories(fs::path(dir) / "rttm");
  write_file((fs::path(dir) / "prediction.txt").string(),
             write_predictions(hyp.predictions, format));
  for (const auto& [stem, turns] : hyp.turns) {
    write_file((fs::path(dir) / "rttm" / (stem + ".txt")).string(),
               write_language_turns(turns));
  }
}

FixtureConfig fixture_config_from_json_text(const std::string& text,
                                            HypothesisNoise* noise,
                                            bool* emit_hypothesis,
                                            std::uint64_t* hypothesis_seed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  FixtureConfig cfg;
  try {
    cfg.seed = j.value("seed", cfg.seed);
    cfg.recordings = j.value("recordings", cfg.recordings);
    cfg.grains_min = j.value("grains_min", cfg.grains_min);
    cfg.grains_max = j.value("grains_max", cfg.grains_max);
    cfg.mandarin_proportion = j.value("mandarin_proportion", cfg.mandarin_proportion);
    cfg.english_median_ms = j.value("english_median_ms", cfg.english_median_ms);
    cfg.mandarin_median_ms = j.value("mandarin_median_ms", cfg.mandarin_median_ms);
    cfg.length_sigma = j.value("length_sigma", cfg.length_sigma);
    cfg.overlap_injection_rate = j.value("overlap_injection_rate", cfg.overlap_injection_rate);
    cfg.nonspeech_rate = j.value("nonspeech_rate", cfg.nonspeech_rate);
    cfg.noneval_rate = j.value("noneval_rate", cfg.noneval_rate);
    cfg.redaction_rate = j.value("redaction_rate", cfg.redaction_rate);
    cfg.decoration_rate = j.value("decoration_rate", cfg.decoration_rate);
    cfg.rule3_rate = j.value("rule3_rate", cfg.rule3_rate);
    cfg.regions_per_recording = j.value("regions_per_recording", cfg.regions_per_recording);
    cfg.region_clip_rate = j.value("region_clip_rate", cfg.region_clip_rate);
    cfg.max_recording_ms = j.value("max_recording_ms", cfg.max_recording_ms);
    if (noise && emit_hypothesis) {
      *emit_hypothesis = j.contains("hypothesis");
      if (*emit_hypothesis) {
        const json& h = j.at("hypothesis");
        noise->label_flip_rate = h.value("label_flip_rate", 0.0);
        noise->boundary_jitter_ms = h.value("boundary_jitter_ms", 0.0);
        noise->deletion_rate = h.value("deletion_rate", 0.0);
        noise->insertion_rate = h.value("insertion_rate", 0.0);
        if (hypothesis_seed) *hypothesis_seed = h.value("seed", cfg.seed);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return cfg;
}

}  // namespace cseval
