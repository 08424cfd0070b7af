// include/cseval/fixtures.h

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

#ifndef CSEVAL_FIXTURES_H_
#define CSEVAL_FIXTURES_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cseval/annotations.h"
#include "cseval/formats.h"
#include "cseval/interval.h"

namespace cseval {

// Seeded synthetic corpus parameters.  Identical config and seed produce
// byte-identical output files; the sampler never goes through
// implementation-defined <random> distributions.
struct FixtureConfig {
  std::uint64_t seed = 0;
  int recordings = 1;
  int grains_min = 3;
  int grains_max = 12;
  double mandarin_proportion = 0.25;
  double english_median_ms = 1125.0;  // log-normal length target
  double mandarin_median_ms = 900.0;
  double length_sigma = 0.8;
  double overlap_injection_rate = 0.0;  // per target grain
  double nonspeech_rate = 0.15;         // per utterance
  double noneval_rate = 0.0;
  double redaction_rate = 0.0;
  double decoration_rate = 0.25;  // Languageless / Red-Dot raw decorations
  double rule3_rate = 0.0;        // utterances made only of Languageless
  int regions_per_recording = 1;  // 1 or 2
  double region_clip_rate = 0.0;  // chance a region edge cuts into a grain
  Ms max_recording_ms = 60'000;
};

struct GeneratedRecording {
  std::string audio_name;
  std::vector<Grain> grains;  // ground truth, sorted, overlap flags set
  std::vector<Interval> regions;
  std::vector<Interval> exclusions;  // redaction holes
  std::vector<Utterance> raw_utterances;
};

struct Corpus {
  FixtureConfig config;
  std::vector<GeneratedRecording> recordings;
};

Corpus generate_corpus(const FixtureConfig& config);  // throws ConfigError

// reference.csv, regions.csv, raw_tokens.csv, exclusions.csv, manifest.json
void write_corpus(const Corpus& corpus, const std::string& dir);

std::string corpus_manifest_json(const Corpus& corpus);

struct HypothesisNoise {
  double label_flip_rate = 0.0;
  double boundary_jitter_ms = 0.0;
  double deletion_rate = 0.0;
  double insertion_rate = 0.0;
};

struct GeneratedHypothesis {
  std::vector<ScoredSegment> predictions;                  // reference order
  std::map<std::string, std::vector<LanguageTurn>> turns;  // keyed by stem
};

// Zero noise reproduces a perfect submission on both tasks.
GeneratedHypothesis generate_hypothesis(const Corpus& corpus, const HypothesisNoise& noise,
                                        std::uint64_t seed);

// dir/prediction.txt plus dir/rttm/<stem>.txt per recording.
void write_hypothesis(const GeneratedHypothesis& hyp, const std::string& dir,
                      PredictionFormat format = PredictionFormat::OneLine);

// Reads a FixtureConfig (and optional "hypothesis" block) from config JSON.
FixtureConfig fixture_config_from_json_text(const std::string& text,
                                            HypothesisNoise* noise = nullptr,
                                            bool* emit_hypothesis = nullptr,
                                            std::uint64_t* hypothesis_seed = nullptr);

}  // namespace cseval

#endif  // CSEVAL_FIXTURES_H_
