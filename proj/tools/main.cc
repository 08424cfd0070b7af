// tools/main.cc

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

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "cseval/annotations.h"
#include "cseval/csv.h"
#include "cseval/error.h"
#include "cseval/fixtures.h"
#include "cseval/formats.h"
#include "cseval/ld.h"
#include "cseval/lid.h"
#include "cseval/report.h"
#include "cseval/validate.h"
#include "cseval/zip.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cseval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitError = 2;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void finish_report(EvalReport& report, const Timer& timer, bool deterministic,
                   const std::string& out_path) {
  if (!deterministic) report.wall_ms = timer.elapsed_ms();
  if (out_path.empty()) return;
  const std::string text = to_json(report).dump(2) + "\n";
  if (out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

std::string percent(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", rate * 100.0);
  return buf;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

PredictionFormat format_from_name(const std::string& name) {
  if (name == "two-line") return PredictionFormat::TwoLine;
  if (name == "one-line") return PredictionFormat::OneLine;
  return PredictionFormat::Auto;
}

void print_violations(const ValidationReport& report) {
  std::size_t shown = 0;
  for (const Violation& v : report.violations) {
    if (shown++ == 10) {
      std::cerr << "  ... " << (report.violations.size() - 10) << " more\n";
      break;
    }
    std::cerr << "  [" << v.rule << "] " << v.location << ": " << v.message << "\n";
  }
}

std::size_t thread_cap() {
  if (const char* env = std::getenv("EVAL_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<std::size_t>(n);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Index-parallel loop with deterministic output slots; the first exception
// wins and is rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<SegmentId> expected_ids_of(const std::vector<Grain>& grains) {
  std::vector<SegmentId> ids;
  for (const Grain& g : grains) {
    if (is_target_language(g.language) && !g.overlap_diff_lang) {
      ids.push_back(segment_id_for(g));
    }
  }
  return ids;
}

// ---------------------------------------------------------------------------
// score-lid
// ---------------------------------------------------------------------------

struct ScoreLidArgs {
  std::string ref, pred, out;
  std::string format = "auto";
  bool lenient = false;
  bool deterministic = false;
};

int run_score_lid(const ScoreLidArgs& args) {
  Timer timer;
  EvalReport report;
  report.command = "score-lid";
  report.inputs = {{"ref", args.ref}, {"pred", args.pred}};
  report.options = {{"format", args.format},
                    {"lenient", args.lenient},
                    {"deterministic", args.deterministic}};

  const std::vector<Grain> grains = parse_reference_csv(read_file(args.ref));
  const std::vector<SegmentId> expected = expected_ids_of(grains);
  const PredictionFormat format = format_from_name(args.format);

  const ValidationReport validation =
      validate_path(args.pred, Task::Lid, expected, {}, format);
  report.validation = to_json(validation);
  if (!validation.valid) {
    const bool rescued = args.lenient && validation.only_order_violations();
    if (!rescued) {
      finish_report(report, timer, args.deterministic, args.out);
      std::cerr << "invalid submission: " << validation.violations.size()
                << " violation(s)\n";
      print_violations(validation);
      return kExitInvalid;
    }
    report.decisions.push_back(
        "scored under --lenient: segment order violations ignored, scores keyed by id");
  }

  const Submission submission = open_submission(args.pred, Task::Lid);
  const ParsedPredictions parsed =
      parse_predictions(submission.files.at("prediction.txt"), expected, format);
  if (parsed.auto_detected) {
    std::string note = "prediction format auto-detected: " + to_string(parsed.format);
    if (parsed.ambiguous) note += " (file is consistent with both formats)";
    report.decisions.push_back(note);
  }

  const LidReport metrics = score_lid(grains, parsed.segments);
  if (metrics.decisions_tied > 0) {
    report.decisions.push_back(std::to_string(metrics.decisions_tied) +
                               " zero detection scores decided as Mandarin");
  }
  std::size_t single_language = 0;
  for (const FileLidScore& f : metrics.per_file) single_language += f.single_language;
  if (single_language > 0) {
    report.decisions.push_back(
        std::to_string(single_language) +
        " single-language recording(s) use their sole class recall as balanced "
        "accuracy; the macro average weights recordings equally");
  }
  report.metrics = to_json(metrics);
  finish_report(report, timer, args.deterministic, args.out);

  std::cout << "EER: " << percent(metrics.eer) << "\n";
  std::cout << "balanced accuracy (macro): " << fixed4(metrics.balanced_accuracy_macro)
            << "\n";
  std::cout << "accuracy: " << fixed4(metrics.accuracy) << "  (" << metrics.n_trials
            << " trials, " << metrics.n_excluded_overlap << " overlap-excluded)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// score-ld
// ---------------------------------------------------------------------------

struct ScoreLdArgs {
  std::string ref, regions, hyp, exclusions, out;
  std::string denominator = "ref-speech";
  Ms collar = 0;
  bool deterministic = false;
};

int run_score_ld(const ScoreLdArgs& args) {
  Timer timer;
  EvalReport report;
  report.command = "score-ld";
  report.inputs = {{"ref", args.ref}, {"regions", args.regions}, {"hyp", args.hyp}};
  if (!args.exclusions.empty()) report.inputs.push_back({"exclusions", args.exclusions});
  report.options = {{"denominator", args.denominator},
                    {"collar_ms", args.collar},
                    {"deterministic", args.deterministic}};

  if (args.collar < 0) throw ConfigError("--collar must be non-negative");

  const std::vector<Grain> grains = parse_reference_csv(read_file(args.ref));
  const auto regions = parse_evaluated_regions(read_file(args.regions));
  std::map<std::string, SpanSet> exclusions;
  if (!args.exclusions.empty()) {
    exclusions = parse_exclusions_csv(read_file(args.exclusions));
  }

  std::vector<std::string> expected_stems;
  for (const auto& [audio, spans] : regions) expected_stems.push_back(audio_stem(audio));

  const ValidationReport validation =
      validate_path(args.hyp, Task::Ld, {}, expected_stems);
  report.validation = to_json(validation);
  if (!validation.valid) {
    finish_report(report, timer, args.deterministic, args.out);
    std::cerr << "invalid submission: " << validation.violations.size()
              << " violation(s)\n";
    print_violations(validation);
    return kExitInvalid;
  }

  const Submission submission = open_submission(args.hyp, Task::Ld);

  std::map<std::string, std::vector<Grain>> grains_by_audio;
  for (const Grain& g : grains) grains_by_audio[g.audio_name].push_back(g);
  std::size_t unscored_recordings = 0;
  for (const auto& [audio, list] : grains_by_audio) {
    if (!regions.count(audio)) ++unscored_recordings;
  }
  if (unscored_recordings > 0) {
    report.decisions.push_back(std::to_string(unscored_recordings) +
                               " reference recording(s) have no evaluated regions and "
                               "were not scored");
  }

  std::vector<std::string> audio_names;
  for (const auto& [audio, spans] : regions) audio_names.push_back(audio);
  std::vector<DerBreakdown> breakdowns(audio_names.size());
  const std::vector<Grain> no_grains;
  parallel_for(audio_names.size(), [&](std::size_t i) {
    const std::string& audio = audio_names[i];
    const auto git = grains_by_audio.find(audio);
    const std::vector<Grain>& rec_grains =
        git == grains_by_audio.end() ? no_grains : git->second;
    SpanSet extra;
    const auto xit = exclusions.find(audio);
    if (xit != exclusions.end()) extra = xit->second;
    ReferenceTimeline ref =
        build_reference_timeline(rec_grains, regions.at(audio), extra, args.collar);
    ref.audio_name = audio;
    const HypothesisTimeline hyp = build_hypothesis_timeline(
        audio, parse_language_turns(submission.files.at(audio_stem(audio))),
        ref.scored_region);
    breakdowns[i] = score_recording(ref, hyp);
    breakdowns[i].audio_name = audio;
  });

  const Denominator denominator = args.denominator == "scored-region"
                                      ? Denominator::ScoredRegion
                                      : Denominator::RefSpeech;
  const LdReport metrics = aggregate(std::move(breakdowns), denominator);
  report.metrics = to_json(metrics);
  if (metrics.totals.clipped_ms > 0) {
    report.decisions.push_back(std::to_string(metrics.totals.clipped_ms) +
                               " ms of reference language time fell outside the "
                               "evaluated regions and was clipped");
  }
  finish_report(report, timer, args.deterministic, args.out);

  std::cout << "DER: " << percent(metrics.der) << " (language error "
            << percent(metrics.language_error_rate) << ", missed "
            << percent(metrics.missed_rate) << ", false alarm "
            << percent(metrics.false_alarm_rate) << ")\n";
  std::cout << "english error rate: " << percent(metrics.english_error_rate)
            << ", mandarin error rate: " << percent(metrics.mandarin_error_rate)
            << "  (denominator " << to_string(metrics.denominator) << ", "
            << metrics.denominator_ms << " ms)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct ValidateArgs {
  int task = 1;
  std::string ref, regions, sub, out;
  std::string format = "auto";
  bool deterministic = false;
};

int run_validate(const ValidateArgs& args) {
  Timer timer;
  EvalReport report;
  report.command = "validate";
  report.inputs = {{"ref", args.ref}, {"sub", args.sub}};
  if (!args.regions.empty()) report.inputs.push_back({"regions", args.regions});
  report.options = {{"task", args.task},
                    {"format", args.format},
                    {"deterministic", args.deterministic}};

  ValidationReport validation;
  if (args.task == 1) {
    const std::vector<Grain> grains = parse_reference_csv(read_file(args.ref));
    validation = validate_path(args.sub, Task::Lid, expected_ids_of(grains), {},
                               format_from_name(args.format));
  } else {
    std::vector<std::string> stems;
    if (!args.regions.empty()) {
      for (const auto& [audio, spans] : parse_evaluated_regions(read_file(args.regions))) {
        stems.push_back(audio_stem(audio));
      }
    } else {
      std::set<std::string> unique;
      for (const Grain& g : parse_reference_csv(read_file(args.ref))) {
        unique.insert(audio_stem(g.audio_name));
      }
      stems.assign(unique.begin(), unique.end());
    }
    validation = validate_path(args.sub, Task::Ld, {}, stems);
  }
  report.validation = to_json(validation);
  finish_report(report, timer, args.deterministic, args.out);

  if (validation.valid) {
    std::cout << "valid submission (" << validation.counts.found << "/"
              << validation.counts.expected << " expected entries)\n";
    return kExitOk;
  }
  std::cout << "invalid submission: " << validation.violations.size()
            << " violation(s)\n";
  print_violations(validation);
  return kExitInvalid;
}

// ---------------------------------------------------------------------------
// recode
// ---------------------------------------------------------------------------

struct RecodeArgs {
  std::string tokens, out, exclusions_out, report_out;
  bool deterministic = false;
};

int run_recode(const RecodeArgs& args) {
  Timer timer;
  EvalReport report;
  report.command = "recode";
  report.inputs = {{"tokens", args.tokens}};
  report.options = {{"out", args.out},
                    {"exclusions_out", args.exclusions_out},
                    {"deterministic", args.deterministic}};

  const std::vector<Utterance> utterances = parse_raw_tokens_csv(read_file(args.tokens));
  const RecodeResult result = recode_corpus(utterances);
  write_file(args.out, write_reference_csv(result.grains));

  Ms excluded_ms = 0;
  for (const auto& [audio, spans] : result.exclusions) {
    excluded_ms += spans.total_duration();
  }
  if (!args.exclusions_out.empty()) {
    write_file(args.exclusions_out, write_exclusions_csv(result.exclusions));
  } else if (excluded_ms > 0) {
    std::cerr << "note: " << excluded_ms
              << " ms of redacted speech must be excluded from diarization scoring; "
                 "pass --exclusions-out to save the spans\n";
  }
  report.decisions = result.notes;

  json metrics;
  metrics["kind"] = "recode";
  metrics["utterances"] = utterances.size();
  metrics["grains"] = result.grains.size();
  metrics["excluded_ms"] = excluded_ms;
  report.metrics = metrics;
  finish_report(report, timer, args.deterministic, args.report_out);

  std::cout << "recoded " << utterances.size() << " utterances into "
            << result.grains.size() << " grains";
  if (excluded_ms > 0) std::cout << " (" << excluded_ms << " ms redacted)";
  std::cout << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

struct StatsArgs {
  std::string ref, regions, out, hist_out;
  Ms bin_ms = 100;
  bool deterministic = false;
};

int run_stats(const StatsArgs& args) {
  Timer timer;
  EvalReport report;
  report.command = "stats";
  report.inputs = {{"ref", args.ref}};
  if (!args.regions.empty()) report.inputs.push_back({"regions", args.regions});
  report.options = {{"bin_ms", args.bin_ms}, {"deterministic", args.deterministic}};

  const std::vector<Grain> grains = parse_reference_csv(read_file(args.ref));
  std::map<std::string, SpanSet> regions;
  const bool have_regions = !args.regions.empty();
  if (have_regions) regions = parse_evaluated_regions(read_file(args.regions));
  const CorpusStats stats = corpus_stats(grains, have_regions ? &regions : nullptr);
  report.metrics = to_json(stats);

  if (!args.hist_out.empty()) {
    write_file(args.hist_out,
               write_histogram_csv(grain_length_histogram(grains, args.bin_ms)));
  }
  finish_report(report, timer, args.deterministic, args.out.empty() ? "-" : args.out);

  std::cerr << stats.recordings << " recordings, " << stats.english.segments
            << " English segments (" << format_hms(stats.english.total_ms) << "), "
            << stats.mandarin.segments << " Mandarin segments ("
            << format_hms(stats.mandarin.total_ms) << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gen-fixtures
// ---------------------------------------------------------------------------

struct GenFixturesArgs {
  std::string config, out;
  bool deterministic = false;
};

int run_gen_fixtures(const GenFixturesArgs& args) {
  Timer timer;
  EvalReport report;
  report.command = "gen-fixtures";
  report.inputs = {{"config", args.config}};
  report.options = {{"out", args.out}, {"deterministic", args.deterministic}};

  HypothesisNoise noise;
  bool emit_hypothesis = false;
  std::uint64_t hyp_seed = 0;
  const FixtureConfig cfg = fixture_config_from_json_text(
      read_file(args.config), &noise, &emit_hypothesis, &hyp_seed);

  const Corpus corpus = generate_corpus(cfg);
  write_corpus(corpus, args.out);

  std::size_t grains = 0;
  for (const GeneratedRecording& rec : corpus.recordings) grains += rec.grains.size();

  if (emit_hypothesis) {
    const GeneratedHypothesis hyp = generate_hypothesis(corpus, noise, hyp_seed);
    const fs::path hyp_dir = fs::path(args.out) / "hypothesis";
    write_hypothesis(hyp, hyp_dir.string());
    zip_write((hyp_dir / "task1.zip").string(),
              {{"prediction.txt", read_file((hyp_dir / "prediction.txt").string())}});
    std::vector<ZipEntry> turn_entries;
    for (const auto& [stem, turns] : hyp.turns) {
      turn_entries.push_back(
          {stem + ".txt", read_file((hyp_dir / "rttm" / (stem + ".txt")).string())});
    }
    zip_write((hyp_dir / "task2.zip").string(), turn_entries);
  }

  json metrics;
  metrics["kind"] = "gen-fixtures";
  metrics["recordings"] = corpus.recordings.size();
  metrics["grains"] = grains;
  metrics["hypothesis"] = emit_hypothesis;
  report.metrics = metrics;
  finish_report(report, timer, args.deterministic, "");

  std::cout << "wrote " << corpus.recordings.size() << " recordings (" << grains
            << " grains) to " << args.out << (emit_hypothesis ? " with hypothesis" : "")
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluation toolkit for code-switched English/Mandarin speech: "
               "language identification and language diarization scoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ScoreLidArgs lid_args;
  CLI::App* lid = app.add_subcommand("score-lid", "Validate and score a Task-1 submission");
  lid->add_option("--ref", lid_args.ref, "Reference annotation CSV")->required();
  lid->add_option("--pred", lid_args.pred, "prediction.txt, zip archive, or directory")
      ->required();
  lid->add_option("--format", lid_args.format, "Prediction format (auto|two-line|one-line)")
      ->check(CLI::IsMember({"auto", "two-line", "one-line"}));
  lid->add_option("--out", lid_args.out, "Write the JSON report here ('-' for stdout)");
  lid->add_flag("--lenient", lid_args.lenient,
                "Score complete but out-of-order submissions anyway");
  lid->add_flag("--deterministic", lid_args.deterministic, "Omit timing from the report");

  ScoreLdArgs ld_args;
  CLI::App* ld = app.add_subcommand("score-ld", "Validate and score a Task-2 submission");
  ld->add_option("--ref", ld_args.ref, "Reference annotation CSV")->required();
  ld->add_option("--regions", ld_args.regions, "Evaluated-regions CSV")->required();
  ld->add_option("--hyp", ld_args.hyp, "Directory or zip of per-recording turn files")
      ->required();
  ld->add_option("--denominator", ld_args.denominator,
                 "Rate denominator (ref-speech|scored-region)")
      ->check(CLI::IsMember({"ref-speech", "scored-region"}));
  ld->add_option("--collar", ld_args.collar,
                 "No-score collar in ms around reference language boundaries");
  ld->add_option("--exclusions", ld_args.exclusions,
                 "CSV of spans to exclude from scoring (redactions)");
  ld->add_option("--out", ld_args.out, "Write the JSON report here ('-' for stdout)");
  ld->add_flag("--deterministic", ld_args.deterministic, "Omit timing from the report");

  ValidateArgs val_args;
  CLI::App* val = app.add_subcommand("validate", "Validate a submission without scoring");
  val->add_option("--task", val_args.task, "1 (identification) or 2 (diarization)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  val->add_option("--ref", val_args.ref, "Reference annotation CSV")->required();
  val->add_option("--regions", val_args.regions,
                  "Evaluated-regions CSV (Task 2 expected recordings)");
  val->add_option("--sub", val_args.sub, "Submission path")->required();
  val->add_option("--format", val_args.format, "Prediction format (auto|two-line|one-line)")
      ->check(CLI::IsMember({"auto", "two-line", "one-line"}));
  val->add_option("--out", val_args.out, "Write the JSON report here ('-' for stdout)");
  val->add_flag("--deterministic", val_args.deterministic, "Omit timing from the report");

  RecodeArgs recode_args;
  CLI::App* rec = app.add_subcommand("recode", "Recode raw annotation tokens to challenge labels");
  rec->add_option("--tokens", recode_args.tokens, "Raw-token CSV")->required();
  rec->add_option("--out", recode_args.out, "Output reference CSV")->required();
  rec->add_option("--exclusions-out", recode_args.exclusions_out,
                  "Write redaction exclusion spans here");
  rec->add_option("--report", recode_args.report_out,
                  "Write the JSON report here ('-' for stdout)");
  rec->add_flag("--deterministic", recode_args.deterministic, "Omit timing from the report");

  StatsArgs stats_args;
  CLI::App* st = app.add_subcommand("stats", "Corpus summary and histogram data");
  st->add_option("--ref", stats_args.ref, "Reference annotation CSV")->required();
  st->add_option("--regions", stats_args.regions, "Evaluated-regions CSV");
  st->add_option("--out", stats_args.out, "Write the JSON summary here (default stdout)");
  st->add_option("--hist-out", stats_args.hist_out, "Write grain-length histogram CSV");
  st->add_option("--bin-ms", stats_args.bin_ms, "Histogram bin width in ms");
  st->add_flag("--deterministic", stats_args.deterministic, "Omit timing from the report");

  GenFixturesArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-fixtures", "Generate a seeded synthetic corpus");
  gen->add_option("--config", gen_args.config, "Fixture config JSON")->required();
  gen->add_option("--out", gen_args.out, "Output directory")->required();
  gen->add_flag("--deterministic", gen_args.deterministic, "Omit timing from the report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lid->parsed()) return run_score_lid(lid_args);
    if (ld->parsed()) return run_score_ld(ld_args);
    if (val->parsed()) return run_validate(val_args);
    if (rec->parsed()) return run_recode(recode_args);
    if (st->parsed()) return run_stats(stats_args);
    if (gen->parsed()) return run_gen_fixtures(gen_args);
  } catch (const SubmissionError& e) {
    std::cerr << "invalid submission: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
