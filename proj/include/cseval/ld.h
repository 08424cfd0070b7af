// include/cseval/ld.h

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

#ifndef CSEVAL_LD_H_
#define CSEVAL_LD_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cseval/annotations.h"
#include "cseval/formats.h"
#include "cseval/interval.h"

namespace cseval {

// Reference side of one recording, shaped for exact per-instant accounting.
// The scored region is the evaluated regions minus Non-Evaluated-Speech
// spans, redaction exclusions, and (optionally) a collar around reference
// language boundaries.  Language sets may overlap each other and are
// clipped to the scored region.
struct ReferenceTimeline {
  std::string audio_name;
  SpanSet english;
  SpanSet mandarin;
  SpanSet excluded;
  SpanSet scored_region;
  Ms clipped_ms = 0;  // language-grain time outside all evaluated regions
};

struct HypothesisTimeline {
  std::string audio_name;
  SpanSet english;
  SpanSet mandarin;
  SpanSet scored_region;  // the region the sets were clipped to
};

ReferenceTimeline build_reference_timeline(const std::vector<Grain>& grains,
                                           const SpanSet& evaluated_regions,
                                           const SpanSet& extra_exclusions = {},
                                           Ms collar_ms = 0);

// Same-language turns are coalesced; everything is clipped to scored_region.
HypothesisTimeline build_hypothesis_timeline(const std::string& audio_name,
                                             const std::vector<LanguageTurn>& turns,
                                             const SpanSet& scored_region);

// Millisecond tallies for one recording.  With R and H the reference and
// hypothesis language sets at an instant:
//   correct        += |R ∩ H|
//   language_error += min(|R|,|H|) - |R ∩ H|
//   missed         += max(0, |R| - |H|)
//   false_alarm    += max(0, |H| - |R|)
//   ref_speech     += |R|
// so correct + language_error + missed == ref_speech always holds.
struct DerBreakdown {
  std::string audio_name;
  Ms correct_ms = 0;
  Ms language_error_ms = 0;
  Ms missed_ms = 0;
  Ms false_alarm_ms = 0;
  Ms ref_speech_ms = 0;
  Ms scored_region_ms = 0;
  Ms english_error_ms = 0;     // English reference time hypothesized as not English
  Ms mandarin_error_ms = 0;    // Mandarin reference time hypothesized as not Mandarin
  Ms english_ref_ms = 0;
  Ms mandarin_ref_ms = 0;
  Ms clipped_ms = 0;

  bool tallies_equal(const DerBreakdown& o) const {
    return correct_ms == o.correct_ms && language_error_ms == o.language_error_ms &&
           missed_ms == o.missed_ms && false_alarm_ms == o.false_alarm_ms &&
           ref_speech_ms == o.ref_speech_ms && scored_region_ms == o.scored_region_ms;
  }
};

// Interval-sweep scorer.  Throws Error when the two timelines were clipped
// to different scored regions.
DerBreakdown score_recording(const ReferenceTimeline& ref, const HypothesisTimeline& hyp);

enum class Denominator { RefSpeech, ScoredRegion };

std::string to_string(Denominator d);

struct LdReport {
  double der = 0.0;
  double language_error_rate = 0.0;
  double missed_rate = 0.0;
  double false_alarm_rate = 0.0;
  double english_error_rate = 0.0;   // shared denominator (primary)
  double mandarin_error_rate = 0.0;  // shared denominator (primary)
  std::optional<double> english_error_rate_english_denom;
  std::optional<double> mandarin_error_rate_mandarin_denom;
  Denominator denominator = Denominator::RefSpeech;
  Ms denominator_ms = 0;
  DerBreakdown totals;
  std::vector<DerBreakdown> per_recording;  // sorted by audio_name
};

// Micro-aggregation: millisecond fields are summed over recordings, then
// rates are formed once.  Throws MetricError on a zero denominator.
LdReport aggregate(std::vector<DerBreakdown> breakdowns,
                   Denominator denominator = Denominator::RefSpeech);

// Literal per-millisecond oracle over raw inputs: iterates every instant of
// every evaluated region, testing membership against each grain / turn
// directly.  Refuses more than `guard_ms` of region time (default 10^7).
DerBreakdown brute_force_score(const std::string& audio_name,
                               const std::vector<Grain>& grains,
                               const std::vector<Interval>& evaluated_regions,
                               const std::vector<Interval>& exclusions,
                               const std::vector<LanguageTurn>& turns,
                               Ms guard_ms = 10'000'000);

}  // namespace cseval

#endif  // CSEVAL_LD_H_
