// src/lid.cc

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

#include "cseval/lid.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cseval/error.h"

namespace cseval {

TrialSet build_trials(const std::vector<Grain>& reference,
                      const std::vector<ScoredSegment>& scored) {
  std::map<std::string, const ScoredSegment*> by_id;
  for (const ScoredSegment& s : scored) {
    if (!by_id.emplace(render_segment_id(s.id), &s).second) {
      throw MetricError("duplicate score for segment " + render_segment_id(s.id));
    }
  }

  TrialSet set;
  std::size_t used = 0;
  for (const Grain& g : reference) {
    if (!is_target_language(g.language)) {
      ++set.n_excluded_nonspeech;
      continue;
    }
    if (g.overlap_diff_lang) {
      ++set.n_excluded_overlap;
      continue;
    }
    const std::string id = render_segment_id(segment_id_for(g));
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw MetricError("no score for reference segment " + id);
    }
    ++used;
    Trial t;
    t.id = it->second->id;
    t.audio_name = g.audio_name;
    t.detection_score = it->second->score_english - it->second->score_mandarin;
    t.is_target = g.language == LanguageLabel::English;
    set.trials.push_back(std::move(t));
  }
  if (used != scored.size()) {
    // Validation flags these as unknown ids before scoring ever runs.
    throw MetricError("submission contains scores for segments outside the reference");
  }
  return set;
}

std::vector<DetPoint> det_curve(const std::vector<Trial>& trials) {
  std::int64_t n_targets = 0, n_nontargets = 0;
  for (const Trial& t : trials) (t.is_target ? n_targets : n_nontargets)++;
  if (n_targets == 0 || n_nontargets == 0) {
    throw MetricError("degenerate trial set: need at least one target and one non-target");
  }

  // Sort ascending by score; sweep thresholds upward.  At threshold t every
  // trial with score >= t is accepted as English.
  std::vector<const Trial*> order;
  order.reserve(trials.size());
  for (const Trial& t : trials) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Trial* a, const Trial* b) {
    return a->detection_score < b->detection_score;
  });

  std::vector<DetPoint> curve;
  std::int64_t targets_below = 0, nontargets_below = 0;  // strictly below threshold
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = order[i]->detection_score;
    DetPoint p;
    p.threshold = threshold;
    p.frr = static_cast<double>(targets_below) / static_cast<double>(n_targets);
    p.far = static_cast<double>(n_nontargets - nontargets_below) /
            static_cast<double>(n_nontargets);
    curve.push_back(p);
    while (i < order.size() && order[i]->detection_score == threshold) {
      (order[i]->is_target ? targets_below : nontargets_below)++;
      ++i;
    }
  }
  // Reject-all point: threshold above every score.
  curve.push_back({std::numeric_limits<double>::infinity(), 0.0, 1.0});
  return curve;
}

double equal_error_rate(const std::vector<Trial>& trials) {
  const std::vector<DetPoint> curve = det_curve(trials);
  // FAR - FRR is non-increasing along the curve, from +1 toward -1.
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double diff = curve[i].far - curve[i].frr;
    if (diff == 0.0) return curve[i].far;
    if (diff < 0.0) {
      // Sign change between i-1 and i; interpolate along the segment.
      const DetPoint& lo = curve[i - 1];  // diff > 0 here
      const DetPoint& hi = curve[i];
      const double d0 = lo.far - lo.frr;
      const double d1 = hi.far - hi.frr;
      const double lambda = d0 / (d0 - d1);
      return lo.far + lambda * (hi.far - lo.far);
    }
  }
  // Unreachable: the reject-all point has diff = -1.
  throw MetricError("no FAR/FRR crossing found");
}

std::vector<FileLidScore> balanced_accuracy_per_file(const std::vector<Trial>& trials,
                                                     std::int64_t* ties) {
  struct Tally {
    std::int64_t n_english = 0, correct_english = 0;
    std::int64_t n_mandarin = 0, correct_mandarin = 0;
  };
  std::map<std::string, Tally> by_file;
  std::int64_t tied = 0;
  for (const Trial& t : trials) {
    Tally& tally = by_file[t.audio_name];
    if (t.detection_score == 0.0) ++tied;
    const bool decided_english = t.detection_score > 0.0;  // tie decides Mandarin
    if (t.is_target) {
      ++tally.n_english;
      if (decided_english) ++tally.correct_english;
    } else {
      ++tally.n_mandarin;
      if (!decided_english) ++tally.correct_mandarin;
    }
  }
  if (ties) *ties = tied;

  std::vector<FileLidScore> out;
  for (const auto& [audio, tally] : by_file) {
    FileLidScore f;
    f.audio_name = audio;
    f.n_english = tally.n_english;
    f.n_mandarin = tally.n_mandarin;
    const bool has_english = tally.n_english > 0;
    const bool has_mandarin = tally.n_mandarin > 0;
    if (has_english) {
      f.recall_english =
          static_cast<double>(tally.correct_english) / static_cast<double>(tally.n_english);
    }
    if (has_mandarin) {
      f.recall_mandarin = static_cast<double>(tally.correct_mandarin) /
                          static_cast<double>(tally.n_mandarin);
    }
    f.single_language = has_english != has_mandarin;
    if (has_english && has_mandarin) {
      f.balanced_accuracy = (f.recall_english + f.recall_mandarin) / 2.0;
    } else {
      f.balanced_accuracy = has_english ? f.recall_english : f.recall_mandarin;
    }
    out.push_back(std::move(f));
  }
  return out;
}

double accuracy(const std::vector<Trial>& trials) {
  if (trials.empty()) throw MetricError("accuracy is undefined on zero trials");
  std::int64_t correct = 0;
  for (const Trial& t : trials) {
    const bool decided_english = t.detection_score > 0.0;
    if (decided_english == t.is_target) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(trials.size());
}

LidReport score_lid(const std::vector<Grain>& reference,
                    const std::vector<ScoredSegment>& scored) {
  TrialSet set = build_trials(reference, scored);
  LidReport report;
  report.n_trials = static_cast<std::int64_t>(set.trials.size());
  report.n_excluded_overlap = set.n_excluded_overlap;
  report.n_excluded_nonspeech = set.n_excluded_nonspeech;
  for (const Trial& t : set.trials) (t.is_target ? report.n_targets : report.n_nontargets)++;

  report.eer = equal_error_rate(set.trials);  // pooled over the whole set
  report.accuracy = accuracy(set.trials);
  report.per_file = balanced_accuracy_per_file(set.trials, &report.decisions_tied);

  // Per-file EERs are informational; files with a single class have none.
  std::map<std::string, std::vector<Trial>> grouped;
  for (const Trial& t : set.trials) grouped[t.audio_name].push_back(t);
  for (FileLidScore& f : report.per_file) {
    if (f.n_english > 0 && f.n_mandarin > 0) {
      f.eer = equal_error_rate(grouped.at(f.audio_name));
    }
  }

  double macro_sum = 0.0;
  std::int64_t pooled_correct_e = 0, pooled_correct_m = 0;
  for (const FileLidScore& f : report.per_file) macro_sum += f.balanced_accuracy;
  report.balanced_accuracy_macro =
      report.per_file.empty() ? 0.0 : macro_sum / static_cast<double>(report.per_file.size());

  for (const Trial& t : set.trials) {
    const bool decided_english = t.detection_score > 0.0;
    if (t.is_target && decided_english) ++pooled_correct_e;
    if (!t.is_target && !decided_english) ++pooled_correct_m;
  }
  const double pooled_recall_e =
      report.n_targets > 0
          ? static_cast<double>(pooled_correct_e) / static_cast<double>(report.n_targets)
          : 0.0;
  const double pooled_recall_m =
      report.n_nontargets > 0 ? static_cast<double>(pooled_correct_m) /
                                    static_cast<double>(report.n_nontargets)
                              : 0.0;
  report.balanced_accuracy_pooled = (pooled_recall_e + pooled_recall_m) / 2.0;

  // Reference files whose eligible segments all dropped out contribute no
  // per-file entry; say so rather than leaving them to be inferred.
  std::map<std::string, bool> has_trial;
  for (const Trial& t : set.trials) has_trial[t.audio_name] = true;
  std::map<std::string, bool> seen_file;
  for (const Grain& g : reference) {
    if (seen_file.emplace(g.audio_name, true).second && !has_trial.count(g.audio_name)) {
      report.notes.push_back("recording " + g.audio_name +
                             " has no eligible segments and is excluded from the macro average");
    }
  }
  return report;
}

}  // namespace cseval
