// tests/acceptance.cc

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

// End-to-end acceptance suite.  Each criterion prints one PASS/FAIL/SKIP
// line; the process exit code is the number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cseval/annotations.h"
#include "cseval/csv.h"
#include "cseval/error.h"
#include "cseval/fixtures.h"
#include "cseval/formats.h"
#include "cseval/ld.h"
#include "cseval/lid.h"
#include "cseval/validate.h"
#include "cseval/zip.h"

using namespace cseval;
namespace fs = std::filesystem;

#ifndef CSEVAL_BIN
#define CSEVAL_BIN ""
#endif

namespace {

struct Skip {
  std::string reason;
};

struct Failure {
  std::string what;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure{message};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. Oracle equivalence on 1000 seeded random fixtures.
// ---------------------------------------------------------------------------

void criterion_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  Ms total_ref_speech = 0;
  Ms total_disagreement = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    FixtureConfig cfg;
    cfg.seed = seed;
    cfg.recordings = 1;
    cfg.grains_min = 4;
    cfg.grains_max = 12;
    cfg.mandarin_proportion = 0.3;
    cfg.overlap_injection_rate = 0.3;  // overlap injection on
    cfg.nonspeech_rate = 0.12;
    cfg.noneval_rate = 0.06;
    cfg.redaction_rate = 0.15;
    cfg.decoration_rate = 0.4;
    cfg.rule3_rate = 0.05;
    cfg.regions_per_recording = 1 + static_cast<int>(seed % 2);
    cfg.region_clip_rate = 0.3;
    cfg.max_recording_ms = 60'000;  // recordings stay under a minute

    const Corpus corpus = generate_corpus(cfg);
    HypothesisNoise noise;
    noise.label_flip_rate = 0.15;
    noise.boundary_jitter_ms = 120.0;
    noise.deletion_rate = 0.1;
    noise.insertion_rate = 0.1;
    const GeneratedHypothesis hyp = generate_hypothesis(corpus, noise, seed * 7919 + 1);

    const GeneratedRecording& rec = corpus.recordings.front();
    const std::vector<LanguageTurn>& turns = hyp.turns.at(audio_stem(rec.audio_name));

    const ReferenceTimeline ref = build_reference_timeline(
        rec.grains, normalize(rec.regions), normalize(rec.exclusions));
    const HypothesisTimeline hyp_tl =
        build_hypothesis_timeline(rec.audio_name, turns, ref.scored_region);
    const DerBreakdown fast = score_recording(ref, hyp_tl);
    const DerBreakdown slow = brute_force_score(rec.audio_name, rec.grains, rec.regions,
                                                rec.exclusions, turns);
    require(fast.tallies_equal(slow),
            "seed " + std::to_string(seed) + ": interval sweep != per-ms oracle");
    require(fast.english_error_ms == slow.english_error_ms &&
                fast.mandarin_error_ms == slow.mandarin_error_ms,
            "seed " + std::to_string(seed) + ": per-language error mismatch");
    total_ref_speech += fast.ref_speech_ms;
    total_disagreement += fast.language_error_ms + fast.missed_ms + fast.false_alarm_ms;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(total_ref_speech > 0 && total_disagreement > 0,
          "differential fixtures degenerated to empty timelines");
  require(elapsed < 60.0,
          "1000-fixture differential took " + fmt(elapsed) + " s (budget 60 s)");
  std::cerr << "        (1000 fixtures in " << fmt(elapsed) << " s)\n";
}

// ---------------------------------------------------------------------------
// 2. Metric sanity suite.
// ---------------------------------------------------------------------------

FixtureConfig sanity_config(std::uint64_t seed) {
  FixtureConfig cfg;
  cfg.seed = seed;
  cfg.recordings = 4;
  cfg.grains_min = 8;
  cfg.grains_max = 16;
  cfg.mandarin_proportion = 0.4;
  cfg.overlap_injection_rate = 0.2;
  cfg.nonspeech_rate = 0.1;
  cfg.redaction_rate = 0.1;
  cfg.decoration_rate = 0.3;
  cfg.regions_per_recording = 2;
  return cfg;
}

void criterion_metric_sanity() {
  // Perfect submission.
  const Corpus corpus = generate_corpus(sanity_config(101));
  const GeneratedHypothesis perfect = generate_hypothesis(corpus, {}, 5);
  std::vector<Grain> grains;
  for (const GeneratedRecording& rec : corpus.recordings) {
    grains.insert(grains.end(), rec.grains.begin(), rec.grains.end());
  }
  const LidReport lid = score_lid(grains, perfect.predictions);
  require(lid.eer == 0.0, "perfect submission: EER " + fmt(lid.eer) + " != 0");
  require(lid.balanced_accuracy_macro == 1.0, "perfect submission: balanced accuracy != 1");

  std::vector<DerBreakdown> breakdowns;
  for (const GeneratedRecording& rec : corpus.recordings) {
    const ReferenceTimeline ref = build_reference_timeline(
        rec.grains, normalize(rec.regions), normalize(rec.exclusions));
    breakdowns.push_back(score_recording(
        ref, build_hypothesis_timeline(rec.audio_name,
                                       perfect.turns.at(audio_stem(rec.audio_name)),
                                       ref.scored_region)));
  }
  const LdReport ld = aggregate(breakdowns);
  require(ld.der == 0.0, "perfect submission: DER " + fmt(ld.der) + " != 0");

  // Fully inverted scores.
  const GeneratedHypothesis inverted =
      generate_hypothesis(corpus, {1.0, 0.0, 0.0, 0.0}, 6);
  const LidReport flipped = score_lid(grains, inverted.predictions);
  require(flipped.eer == 1.0, "inverted scores: EER " + fmt(flipped.eer) + " != 1");

  // Empty Task-2 hypothesis.
  std::vector<DerBreakdown> empty_breakdowns;
  for (const GeneratedRecording& rec : corpus.recordings) {
    const ReferenceTimeline ref = build_reference_timeline(
        rec.grains, normalize(rec.regions), normalize(rec.exclusions));
    empty_breakdowns.push_back(score_recording(
        ref, build_hypothesis_timeline(rec.audio_name, {}, ref.scored_region)));
  }
  const LdReport empty = aggregate(empty_breakdowns);
  require(empty.totals.language_error_ms == 0 && empty.totals.false_alarm_ms == 0,
          "empty hypothesis produced language errors or false alarms");
  require(empty.totals.missed_ms == empty.totals.ref_speech_ms,
          "empty hypothesis: missed != reference speech");

  // Random balanced scores: EER near one half.
  std::mt19937_64 rng(77);
  std::vector<Trial> random_trials;
  for (int i = 0; i < 10'000; ++i) {
    Trial t;
    t.detection_score = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    t.is_target = (i % 2) == 0;
    random_trials.push_back(t);
  }
  const double eer = equal_error_rate(random_trials);
  require(std::abs(eer - 0.5) <= 0.05,
          "label-independent scores: EER " + fmt(eer) + " not within 0.5 +- 0.05");
}

// ---------------------------------------------------------------------------
// 3. Hand-derived values, exact.
// ---------------------------------------------------------------------------

void criterion_hand_derived() {
  // Four trials whose sweep crosses exactly at 0.5.
  std::vector<Trial> four;
  for (double s : {2.0, -1.0}) four.push_back({{}, "A", s, true});
  for (double s : {-2.0, 1.0}) four.push_back({{}, "A", s, false});
  require(equal_error_rate(four) == 0.5, "4-trial EER != 0.5");

  // Balanced accuracy 5/6: three English (two right), one Mandarin (right).
  std::vector<Trial> ba;
  ba.push_back({{}, "A", 2.0, true});
  ba.push_back({{}, "A", 1.0, true});
  ba.push_back({{}, "A", -0.5, true});
  ba.push_back({{}, "A", -1.0, false});
  const std::vector<FileLidScore> per_file = balanced_accuracy_per_file(ba);
  require(per_file.size() == 1 && per_file[0].balanced_accuracy == (2.0 / 3.0 + 1.0) / 2.0,
          "balanced accuracy != 5/6");

  // Confusion timeline: exactly 10% DER.
  const std::vector<Grain> confusion = {
      {"A.wav", "a1", {0, 600}, LanguageLabel::English, false},
      {"A.wav", "a2", {600, 1000}, LanguageLabel::Mandarin, false},
  };
  const ReferenceTimeline ref1 =
      build_reference_timeline(confusion, normalize({{0, 1000}}));
  const DerBreakdown b1 = score_recording(
      ref1, build_hypothesis_timeline("A.wav",
                                      {{0, 500, LanguageLabel::English},
                                       {500, 1000, LanguageLabel::Mandarin}},
                                      ref1.scored_region));
  const LdReport r1 = aggregate({b1});
  require(b1.language_error_ms == 100 && b1.missed_ms == 0 && b1.false_alarm_ms == 0,
          "confusion timeline tallies wrong");
  require(r1.der == 0.1, "confusion DER " + fmt(r1.der) + " != 10%");

  // Miss + false alarm timeline: exactly 100% DER under the default
  // reference-speech denominator.
  const std::vector<Grain> missfa = {
      {"A.wav", "a1", {0, 500}, LanguageLabel::English, false},
      {"A.wav", "a2", {500, 1000}, LanguageLabel::NonSpeech, false},
  };
  const ReferenceTimeline ref2 = build_reference_timeline(missfa, normalize({{0, 1000}}));
  const DerBreakdown b2 = score_recording(
      ref2, build_hypothesis_timeline("A.wav", {{250, 750, LanguageLabel::English}},
                                      ref2.scored_region));
  const LdReport r2 = aggregate({b2});
  require(b2.missed_ms == 250 && b2.false_alarm_ms == 250,
          "miss/false-alarm timeline tallies wrong");
  require(r2.der == 1.0, "miss/false-alarm DER " + fmt(r2.der) + " != 100%");
}

// ---------------------------------------------------------------------------
// 4. Recoding goldens and invariants.
// ---------------------------------------------------------------------------

void criterion_recoding() {
  auto utterance = [](std::vector<std::pair<Interval, RawLabel>> tokens) {
    Utterance u;
    u.audio_name = "golden.wav";
    u.speaker = "spk1";
    u.utt_id = "u1";
    int i = 0;
    for (const auto& [span, label] : tokens) u.tokens.push_back({i++, span, label});
    return u;
  };

  // Leading filler joins the following Mandarin.
  const RecodedUtterance filler = recode_utterance(
      utterance({{{0, 300}, RawLabel::Languageless}, {{300, 1200}, RawLabel::Mandarin}}),
      LanguageLabel::English);
  require(filler.grains ==
              std::vector<LabeledSpan>{{{0, 1200}, LanguageLabel::Mandarin}},
          "filler + Mandarin did not recode to one Mandarin grain");

  // Mandarin utterance ending in a discourse particle stays Mandarin.
  const RecodedUtterance lor = recode_utterance(
      utterance({{{0, 1500}, RawLabel::Mandarin}, {{1500, 1800}, RawLabel::RedDotDiscourse}}),
      LanguageLabel::English);
  require(lor.grains == std::vector<LabeledSpan>{{{0, 1800}, LanguageLabel::Mandarin}},
          "Mandarin + discourse particle did not stay Mandarin");

  // English utterance ending in a discourse particle stays English.
  const RecodedUtterance hor = recode_utterance(
      utterance({{{0, 1100}, RawLabel::English}, {{1100, 1400}, RawLabel::RedDotDiscourse}}),
      LanguageLabel::Mandarin);
  require(hor.grains == std::vector<LabeledSpan>{{{0, 1400}, LanguageLabel::English}},
          "English + discourse particle did not stay English");

  // Randomized invariants: closure, span conservation, idempotence.
  std::mt19937_64 rng(4242);
  const RawLabel raw_labels[] = {RawLabel::English,       RawLabel::Mandarin,
                                 RawLabel::Languageless,  RawLabel::RedDotDiscourse,
                                 RawLabel::RedDotVocab,   RawLabel::NonSpeech,
                                 RawLabel::NonEvaluatedSpeech, RawLabel::Redacted};
  for (int it = 0; it < 300; ++it) {
    std::vector<std::pair<Interval, RawLabel>> tokens;
    Ms t = 0;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      const Ms len = 100 + static_cast<Ms>(rng() % 800);
      tokens.push_back({{t, t + len}, raw_labels[rng() % 8]});
      t += len;
    }
    const Utterance u = utterance(tokens);
    const LanguageLabel main =
        (rng() % 2) ? LanguageLabel::English : LanguageLabel::Mandarin;
    const RecodedUtterance rec = recode_utterance(u, main);

    std::vector<Interval> covered;
    for (const LabeledSpan& g : rec.grains) {
      require(g.label == LanguageLabel::English || g.label == LanguageLabel::Mandarin ||
                  g.label == LanguageLabel::NonSpeech ||
                  g.label == LanguageLabel::NonEvaluatedSpeech,
              "recode output leaked a raw label");
      covered.push_back(g.span);
    }
    for (const Interval& x : rec.excluded) covered.push_back(x);
    std::vector<Interval> token_union;
    for (const auto& [span, label] : tokens) token_union.push_back(span);
    require(normalize(covered) == normalize(token_union),
            "span conservation violated by recoding");

    Utterance again = u;
    again.tokens.clear();
    int index = 0;
    for (const LabeledSpan& g : rec.grains) {
      RawLabel raw = RawLabel::NonSpeech;
      if (g.label == LanguageLabel::English) raw = RawLabel::English;
      if (g.label == LanguageLabel::Mandarin) raw = RawLabel::Mandarin;
      if (g.label == LanguageLabel::NonEvaluatedSpeech) raw = RawLabel::NonEvaluatedSpeech;
      again.tokens.push_back({index++, g.span, raw});
    }
    if (!again.tokens.empty()) {
      const RecodedUtterance rerun = recode_utterance(again, main);
      require(rerun.grains == rec.grains && rerun.excluded.empty(),
              "recoding is not idempotent on recoded output");
    }
  }
}

// ---------------------------------------------------------------------------
// 5. Codec round-trips.
// ---------------------------------------------------------------------------

void criterion_codecs() {
  // The worked id from the development set.
  const std::string worked_id =
      "TTS_P91182TT_VCST_ECxxx_01_AO_48503281_v001_R004_CRR_MERLion-CCS_a1_1170_2750";
  const SegmentId parsed_id = parse_segment_id(worked_id);
  require(parsed_id.audio_name ==
                  "TTS_P91182TT_VCST_ECxxx_01_AO_48503281_v001_R004_CRR_MERLion-CCS" &&
              parsed_id.utt_id == "a1" && parsed_id.start == 1170 && parsed_id.end == 2750,
          "worked segment id parsed wrong");
  require(render_segment_id(parsed_id) == worked_id, "worked segment id render wrong");

  // The worked score lines, in both formats.
  const std::vector<SegmentId> expected = {parsed_id};
  const ParsedPredictions two = parse_predictions(
      worked_id + " 0 4.21080\n" + worked_id + " 1 -10.018997\n", expected);
  require(two.format == PredictionFormat::TwoLine && two.segments.size() == 1 &&
              two.segments[0].score_english == 4.21080 &&
              two.segments[0].score_mandarin == -10.018997,
          "two-line worked example parsed wrong");
  const ParsedPredictions one =
      parse_predictions(worked_id + " 4.21080 -10.018997\n", expected);
  require(one.format == PredictionFormat::OneLine &&
              one.segments[0].score_english == 4.21080 &&
              one.segments[0].score_mandarin == -10.018997,
          "one-line worked example parsed wrong");

  std::mt19937_64 rng(99);
  static const char* kParts[] = {"TTS", "rec", "P987", "x", "a-b", "v001", "club", "MER"};
  auto random_name = [&rng]() {
    std::string name;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      if (i) name += '_';
      name += kParts[rng() % 8];
    }
    return name;
  };

  // 10 000 randomized ids with underscores.
  for (int i = 0; i < 10'000; ++i) {
    SegmentId id;
    id.audio_name = random_name();
    id.utt_id = "a" + std::to_string(rng() % 100000);
    id.start = static_cast<Ms>(rng() % 3'000'000);
    id.end = id.start + 1 + static_cast<Ms>(rng() % 100'000);
    require(parse_segment_id(render_segment_id(id)) == id,
            "segment id round-trip failed for " + render_segment_id(id));
  }

  // Turn files.
  for (int it = 0; it < 100; ++it) {
    std::vector<LanguageTurn> turns;
    for (int i = 0; i < 100; ++i) {
      LanguageTurn t;
      t.start = static_cast<Ms>(rng() % 2'000'000);
      t.end = t.start + 1 + static_cast<Ms>(rng() % 50'000);
      t.language = (rng() % 2) ? LanguageLabel::English : LanguageLabel::Mandarin;
      turns.push_back(t);
    }
    const std::string text = write_language_turns(turns);
    require(parse_language_turns(text) == turns, "turn list round-trip failed");
    require(write_language_turns(parse_language_turns(text)) == text,
            "turn file bytes changed across a round-trip");
  }

  // Prediction files in both formats.
  std::vector<ScoredSegment> segments;
  std::vector<SegmentId> ids;
  for (int i = 0; i < 10'000; ++i) {
    ScoredSegment s;
    s.id.audio_name = random_name();
    s.id.utt_id = "a" + std::to_string(i);
    s.id.start = static_cast<Ms>(rng() % 1'000'000);
    s.id.end = s.id.start + 1 + static_cast<Ms>(rng() % 30'000);
    s.score_english = std::ldexp(static_cast<double>(rng()), -61) - 2.0;
    s.score_mandarin = std::ldexp(static_cast<double>(rng()), -61) - 2.0;
    ids.push_back(s.id);
    segments.push_back(std::move(s));
  }
  for (const PredictionFormat f : {PredictionFormat::TwoLine, PredictionFormat::OneLine}) {
    const std::string text = write_predictions(segments, f);
    const ParsedPredictions back = parse_predictions(text, ids, f);
    require(back.segments == segments, "prediction values changed across a round-trip");
    require(write_predictions(back.segments, f) == text,
            "prediction bytes changed across a round-trip");
  }
}

// ---------------------------------------------------------------------------
// 6. Validation mutation suite and exit codes.
// ---------------------------------------------------------------------------

int run_cli(const std::string& args, bool raw_command = false) {
  const std::string bin = CSEVAL_BIN;
  if (bin.empty()) throw Failure{"CSEVAL_BIN not configured"};
  const std::string cmd =
      (raw_command ? args : bin + " " + args) + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (status < 0) throw Failure{"failed to launch " + cmd};
  return WEXITSTATUS(status);
}

void criterion_validation_mutations() {
  // Library-level single corruptions, one rule each.
  const std::vector<SegmentId> expected = {
      {"rec_a", "a1", 0, 500}, {"rec_a", "a2", 500, 900}, {"rec_b", "a1", 100, 700}};
  auto prediction = [&](int skip = -1, int dup = -1, bool swap01 = false,
                        const std::string& extra = "") {
    std::string text;
    std::vector<int> order = {0, 1, 2};
    if (swap01) std::swap(order[0], order[1]);
    for (int i : order) {
      if (i == skip) continue;
      text += render_segment_id(expected[i]) + " 1.5 -0.5\n";
      if (i == dup) text += render_segment_id(expected[i]) + " 1.5 -0.5\n";
    }
    return text + extra;
  };
  auto single_rule = [](const ValidationReport& report) -> std::string {
    if (report.valid) return "valid";
    std::set<std::string> rules;
    for (const Violation& v : report.violations) rules.insert(v.rule);
    return rules.size() == 1 ? *rules.begin() : "multiple-rules";
  };
  auto check_rule = [&](const std::string& text, const std::string& rule) {
    Submission sub;
    sub.source = "mutation";
    sub.files["prediction.txt"] = text;
    const ValidationReport report = validate_task1(sub, expected);
    require(single_rule(report) == rule,
            "expected rule " + rule + ", got " + single_rule(report));
  };

  {
    Submission sub;
    sub.source = "mutation";
    sub.files["prediction.txt"] = prediction();
    require(validate_task1(sub, expected).valid, "intact fixture failed validation");
  }
  check_rule(prediction(/*skip=*/1), "missing-segment");
  check_rule(prediction(-1, /*dup=*/1), "duplicate-segment");
  check_rule(prediction(-1, -1, /*swap01=*/true), "order-violation");
  check_rule(prediction() + "rec_zz_a7_0_9 1.0 2.0\n", "unknown-segment");
  {
    std::string text = prediction();
    text.replace(text.find("1.5"), 3, "nan");
    check_rule(text, "non-finite-score");
  }
  check_rule(prediction() + render_segment_id(expected[0]) + " broken\n", "format-error");

  const std::vector<std::string> stems = {"rec_a", "rec_b"};
  auto check_rule2 = [&](const std::map<std::string, std::string>& files,
                         const std::string& rule) {
    Submission sub;
    sub.source = "mutation";
    sub.files = files;
    const ValidationReport report = validate_task2(sub, stems);
    require(single_rule(report) == rule,
            "expected rule " + rule + ", got " + single_rule(report));
  };
  const std::map<std::string, std::string> good = {
      {"rec_a", "0.0 500.0 English\n"}, {"rec_b", "100.0 700.0 Mandarin\n"}};
  {
    Submission sub;
    sub.source = "mutation";
    sub.files = good;
    require(validate_task2(sub, stems).valid, "intact Task-2 fixture failed validation");
  }
  {
    auto files = good;
    files.erase("rec_b");
    check_rule2(files, "missing-recording");
  }
  {
    auto files = good;
    files["rec_c"] = "0.0 5.0 English\n";
    check_rule2(files, "unexpected-file");
  }
  {
    auto files = good;
    files["rec_a"] = "0.0 500.0 Hokkien\n";
    check_rule2(files, "unknown-language");
  }
  {
    auto files = good;
    files["rec_a"] = "500.0 0.0 English\n";
    check_rule2(files, "invalid-turn-times");
  }
  {
    auto files = good;
    files["rec_a"] = "0.0 x English\n";
    check_rule2(files, "turn-format-error");
  }

  // Archive-level rules through real zips.
  const fs::path dir = fs::temp_directory_path() / "cseval_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  zip_write((dir / "nested.zip").string(), {{"inner/prediction.txt", prediction()}});
  require(single_rule(validate_path((dir / "nested.zip").string(), Task::Lid, expected, {})) ==
              "archive-structure",
          "nested prediction.txt not flagged archive-structure");
  zip_write((dir / "spaced name.zip").string(), {{"prediction.txt", prediction()}});
  require(single_rule(validate_path((dir / "spaced name.zip").string(), Task::Lid, expected,
                                    {})) == "archive-name-space",
          "archive name with spaces not flagged");

  // Exit codes through the real binary: 0 valid, 1 invalid, 2 infrastructure.
  std::vector<Grain> ref_grains = {
      {"rec_a.wav", "a1", {0, 500}, LanguageLabel::English, false},
      {"rec_a.wav", "a2", {500, 900}, LanguageLabel::Mandarin, false},
      {"rec_b.wav", "a1", {100, 700}, LanguageLabel::English, false},
  };
  write_file((dir / "ref.csv").string(), write_reference_csv(ref_grains));
  write_file((dir / "good.txt").string(), prediction());
  write_file((dir / "missing.txt").string(), prediction(/*skip=*/1));

  require(run_cli("validate --task 1 --ref " + (dir / "ref.csv").string() + " --sub " +
                  (dir / "good.txt").string()) == 0,
          "valid submission should exit 0");
  const std::string report_path = (dir / "report.json").string();
  require(run_cli("validate --task 1 --ref " + (dir / "ref.csv").string() + " --sub " +
                  (dir / "missing.txt").string() + " --out " + report_path) == 1,
          "invalid submission should exit 1");
  require(read_file(report_path).find("missing-segment") != std::string::npos,
          "JSON report does not list the missing-segment rule");
  require(run_cli("validate --task 1 --ref " + (dir / "nope.csv").string() + " --sub " +
                  (dir / "good.txt").string()) == 2,
          "unreadable reference should exit 2");

  // Degenerate scoring: a one-class reference scores to exit 2 even though
  // the submission itself is valid.
  const std::string worked_audio =
      "TTS_P91182TT_VCST_ECxxx_01_AO_48503281_v001_R004_CRR_MERLion-CCS";
  std::vector<Grain> one_row = {
      {worked_audio + ".wav", "a1", {1170, 2750}, LanguageLabel::English, false}};
  write_file((dir / "one.csv").string(), write_reference_csv(one_row));
  const std::string worked_id = worked_audio + "_a1_1170_2750";
  write_file((dir / "worked.txt").string(),
             worked_id + " 0 4.21080\n" + worked_id + " 1 -10.018997\n");
  require(run_cli("validate --task 1 --ref " + (dir / "one.csv").string() + " --sub " +
                  (dir / "worked.txt").string()) == 0,
          "Appendix-style sample lines should validate");
  require(run_cli("score-lid --ref " + (dir / "one.csv").string() + " --pred " +
                  (dir / "worked.txt").string()) == 2,
          "degenerate trial set should exit 2");

  // Identical inputs and flags give byte-identical reports under
  // --deterministic.
  const std::string r1 = (dir / "det1.json").string();
  const std::string r2 = (dir / "det2.json").string();
  for (const std::string& out : {r1, r2}) {
    require(run_cli("score-lid --deterministic --ref " + (dir / "ref.csv").string() +
                    " --pred " + (dir / "good.txt").string() + " --out " + out) == 0,
            "deterministic scoring run failed");
  }
  require(read_file(r1) == read_file(r2), "deterministic reports differ");

  // Aggregated diarization numbers are independent of the thread count.
  write_file((dir / "regions.csv").string(), "rec_a.wav,0,1200\nrec_b.wav,0,1200\n");
  fs::create_directories(dir / "turns");
  write_file((dir / "turns" / "rec_a.txt").string(), "0.0 500.0 English\n");
  write_file((dir / "turns" / "rec_b.txt").string(), "100.0 700.0 English\n");
  const std::string ld_base = "score-ld --deterministic --ref " +
                              (dir / "ref.csv").string() + " --regions " +
                              (dir / "regions.csv").string() + " --hyp " +
                              (dir / "turns").string() + " --out ";
  require(run_cli("env EVAL_THREADS=1 " + std::string(CSEVAL_BIN) + " " + ld_base +
                      (dir / "ld1.json").string(),
                  true) == 0,
          "single-threaded score-ld failed");
  require(run_cli("env EVAL_THREADS=7 " + std::string(CSEVAL_BIN) + " " + ld_base +
                      (dir / "ld7.json").string(),
                  true) == 0,
          "multi-threaded score-ld failed");
  require(read_file((dir / "ld1.json").string()) == read_file((dir / "ld7.json").string()),
          "reports differ across EVAL_THREADS settings");
}

// ---------------------------------------------------------------------------
// 7. EER rank invariance.
// ---------------------------------------------------------------------------

void criterion_rank_invariance() {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 200; ++it) {
    std::vector<Trial> trials;
    const int n = 8 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      Trial t;
      t.detection_score = static_cast<double>(rng() % 4000) / 16.0 - 100.0;
      t.is_target = (i % 2) == 0;
      trials.push_back(t);
    }
    const double before = equal_error_rate(trials);

    std::vector<double> distinct;
    for (const Trial& t : trials) distinct.push_back(t.detection_score);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<double> remapped(distinct.size());
    double v = -1e6;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      v += 0.0625 + static_cast<double>(rng() % 10'000);
      remapped[i] = v;
    }
    std::vector<Trial> transformed = trials;
    for (Trial& t : transformed) {
      const std::size_t rank =
          std::lower_bound(distinct.begin(), distinct.end(), t.detection_score) -
          distinct.begin();
      t.detection_score = remapped[rank];
    }
    require(equal_error_rate(transformed) == before,
            "EER moved under a strictly increasing transform");
  }
}

// ---------------------------------------------------------------------------
// 8. Dataset-conditional checks against a licensed Development set.
// ---------------------------------------------------------------------------

void criterion_development_set() {
  const char* ref_path = std::getenv("CSEVAL_DEV_REF");
  if (!ref_path || !*ref_path) {
    throw Skip{"licensed Development set not present (set CSEVAL_DEV_REF)"};
  }
  const std::vector<Grain> grains = parse_reference_csv(read_file(ref_path));
  const CorpusStats stats = corpus_stats(grains);
  require(stats.english.segments == 40287,
          "English segment count " + std::to_string(stats.english.segments) + " != 40287");
  require(stats.mandarin.segments == 9983,
          "Mandarin segment count " + std::to_string(stats.mandarin.segments) + " != 9983");
  require(stats.english.median_ms == 1125.0, "English median != 1125 ms");
  require(stats.mandarin.median_ms == 900.0, "Mandarin median != 900 ms");
  require(std::llabs(stats.english.total_ms - 58'167'000) < 1000,
          "English total duration not 16:09:27 to the second");
  require(std::llabs(stats.mandarin.total_ms - 11'045'000) < 1000,
          "Mandarin total duration not 03:04:05 to the second");

  // Zero-noise self-submission: reference scores itself perfectly.
  std::vector<ScoredSegment> self;
  for (const Grain& g : grains) {
    if (!is_target_language(g.language) || g.overlap_diff_lang) continue;
    ScoredSegment s;
    s.id = segment_id_for(g);
    const bool english = g.language == LanguageLabel::English;
    s.score_english = english ? 1.0 : -1.0;
    s.score_mandarin = english ? -1.0 : 1.0;
    self.push_back(std::move(s));
  }
  const LidReport lid = score_lid(grains, self);
  require(lid.eer == 0.0, "self-submission EER != 0 on the Development set");

  if (const char* regions_path = std::getenv("CSEVAL_DEV_REGIONS");
      regions_path && *regions_path) {
    const auto regions = parse_evaluated_regions(read_file(regions_path));
    std::vector<DerBreakdown> breakdowns;
    std::map<std::string, std::vector<Grain>> by_audio;
    for (const Grain& g : grains) by_audio[g.audio_name].push_back(g);
    for (const auto& [audio, spans] : regions) {
      const auto it = by_audio.find(audio);
      if (it == by_audio.end()) continue;
      const ReferenceTimeline ref = build_reference_timeline(it->second, spans);
      std::vector<LanguageTurn> turns;
      for (const Grain& g : it->second) {
        if (is_target_language(g.language)) {
          turns.push_back({g.span.start, g.span.end, g.language});
        }
      }
      breakdowns.push_back(score_recording(
          ref, build_hypothesis_timeline(audio, turns, ref.scored_region)));
    }
    const LdReport ld = aggregate(breakdowns);
    require(ld.der == 0.0, "self-submission DER != 0 on the Development set");
  }
}

struct Criterion {
  int id;
  std::string name;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence (1000 seeded fixtures, exact)", criterion_oracle_equivalence},
      {2, "metric sanity suite", criterion_metric_sanity},
      {3, "hand-derived values", criterion_hand_derived},
      {4, "recoding goldens and invariants", criterion_recoding},
      {5, "codec round-trips", criterion_codecs},
      {6, "validation mutation suite and exit codes", criterion_validation_mutations},
      {7, "EER rank invariance", criterion_rank_invariance},
      {8, "Development-set statistics (dataset-conditional)", criterion_development_set},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    try {
      c.body();
      std::cout << "PASS  " << c.id << "  " << c.name << "\n";
    } catch (const Skip& s) {
      std::cout << "SKIP  " << c.id << "  " << c.name << " -- " << s.reason << "\n";
    } catch (const Failure& f) {
      ++failures;
      std::cout << "FAIL  " << c.id << "  " << c.name << " -- " << f.what << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL  " << c.id << "  " << c.name << " -- unexpected error: "
                << e.what() << "\n";
    }
  }
  return failures;
}
