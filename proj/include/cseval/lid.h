// include/cseval/lid.h

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

#ifndef CSEVAL_LID_H_
#define CSEVAL_LID_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cseval/annotations.h"
#include "cseval/formats.h"

namespace cseval {

// One scoring unit: an eligible reference segment with its detection score.
// English is the target class; the detection score is the English score
// minus the Mandarin score, so higher means more English.
struct Trial {
  SegmentId id;
  std::string audio_name;  // with extension, as in the reference CSV
  double detection_score = 0.0;
  bool is_target = false;  // reference label is English
};

struct TrialSet {
  std::vector<Trial> trials;
  std::int64_t n_excluded_overlap = 0;    // target-language grains flagged overlap
  std::int64_t n_excluded_nonspeech = 0;  // Non-Speech / Non-Evaluated-Speech grains
};

// Pairs eligible reference grains (English/Mandarin, overlap_diff_lang
// false) with their scores.  Throws MetricError if an eligible grain has no
// score or a score has no eligible grain.
TrialSet build_trials(const std::vector<Grain>& reference,
                      const std::vector<ScoredSegment>& scored);

// One operating point per distinct score (accept-as-English iff score >=
// threshold) plus the reject-all point.  FAR is non-increasing and FRR
// non-decreasing along the returned curve.
struct DetPoint {
  double threshold = 0.0;
  double far = 0.0;  // accepted non-targets / non-targets
  double frr = 0.0;  // rejected targets / targets
};

std::vector<DetPoint> det_curve(const std::vector<Trial>& trials);

// EER at the crossing of FAR and FRR, linearly interpolated between the
// adjacent operating points when no point has FAR == FRR exactly.
// Throws MetricError unless both classes are present.
double equal_error_rate(const std::vector<Trial>& trials);

struct FileLidScore {
  std::string audio_name;
  double balanced_accuracy = 0.0;
  double recall_english = 0.0;   // meaningful when n_english > 0
  double recall_mandarin = 0.0;  // meaningful when n_mandarin > 0
  std::int64_t n_english = 0;
  std::int64_t n_mandarin = 0;
  bool single_language = false;
  std::optional<double> eer;  // absent when the file has only one class
};

struct LidReport {
  double eer = 0.0;
  double balanced_accuracy_macro = 0.0;
  double balanced_accuracy_pooled = 0.0;
  double accuracy = 0.0;
  std::vector<FileLidScore> per_file;  // sorted by audio_name
  std::int64_t n_trials = 0;
  std::int64_t n_targets = 0;
  std::int64_t n_nontargets = 0;
  std::int64_t n_excluded_overlap = 0;
  std::int64_t n_excluded_nonspeech = 0;
  std::int64_t decisions_tied = 0;  // hard decisions at score exactly 0
  std::vector<std::string> notes;
};

// Per-file balanced accuracies and their unweighted mean.  Hard decision:
// English iff detection score > 0; an exact 0 decides Mandarin and is
// counted in *ties.
std::vector<FileLidScore> balanced_accuracy_per_file(const std::vector<Trial>& trials,
                                                     std::int64_t* ties = nullptr);

// Pooled correct / total under the same hard decision.
double accuracy(const std::vector<Trial>& trials);

// Full Task-1 scoring: trials, EER, balanced accuracies, accuracy.
LidReport score_lid(const std::vector<Grain>& reference,
                    const std::vector<ScoredSegment>& scored);

}  // namespace cseval

#endif  // CSEVAL_LID_H_
