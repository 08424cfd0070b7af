// src/ld.cc

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

#include "cseval/ld.h"

#include <algorithm>

#include "cseval/error.h"

namespace cseval {

ReferenceTimeline build_reference_timeline(const std::vector<Grain>& grains,
                                           const SpanSet& evaluated_regions,
                                           const SpanSet& extra_exclusions,
                                           Ms collar_ms) {
  ReferenceTimeline tl;
  if (!grains.empty()) tl.audio_name = grains.front().audio_name;

  std::vector<Interval> english, mandarin, noneval;
  for (const Grain& g : grains) {
    switch (g.language) {
      case LanguageLabel::English: english.push_back(g.span); break;
      case LanguageLabel::Mandarin: mandarin.push_back(g.span); break;
      case LanguageLabel::NonEvaluatedSpeech: noneval.push_back(g.span); break;
      case LanguageLabel::NonSpeech: break;  // stays scored as nonspeech time
    }
  }
  const SpanSet english_all = normalize(english);
  const SpanSet mandarin_all = normalize(mandarin);

  SpanSet excluded = unite(intersect(normalize(noneval), evaluated_regions),
                           intersect(extra_exclusions, evaluated_regions));
  if (collar_ms > 0) {
    // No-score collar around every reference language boundary.
    std::vector<Interval> collar;
    for (const SpanSet* set : {&english_all, &mandarin_all}) {
      for (const Interval& s : set->spans()) {
        collar.push_back({std::max<Ms>(0, s.start - collar_ms), s.start + collar_ms});
        collar.push_back({std::max<Ms>(0, s.end - collar_ms), s.end + collar_ms});
      }
    }
    excluded = unite(excluded, intersect(normalize(collar), evaluated_regions));
  }

  tl.excluded = excluded;
  tl.scored_region = subtract(evaluated_regions, excluded);
  tl.english = intersect(english_all, tl.scored_region);
  tl.mandarin = intersect(mandarin_all, tl.scored_region);
  tl.clipped_ms = (english_all.total_duration() -
                   intersect(english_all, evaluated_regions).total_duration()) +
                  (mandarin_all.total_duration() -
                   intersect(mandarin_all, evaluated_regions).total_duration());
  return tl;
}

HypothesisTimeline build_hypothesis_timeline(const std::string& audio_name,
                                             const std::vector<LanguageTurn>& turns,
                                             const SpanSet& scored_region) {
  std::vector<Interval> english, mandarin;
  for (const LanguageTurn& t : turns) {
    if (t.language == LanguageLabel::English) {
      english.push_back({t.start, t.end});
    } else if (t.language == LanguageLabel::Mandarin) {
      mandarin.push_back({t.start, t.end});
    } else {
      throw Error("hypothesis turns must be English or Mandarin");
    }
  }
  HypothesisTimeline tl;
  tl.audio_name = audio_name;
  tl.english = intersect(normalize(english), scored_region);
  tl.mandarin = intersect(normalize(mandarin), scored_region);
  tl.scored_region = scored_region;
  return tl;
}

DerBreakdown score_recording(const ReferenceTimeline& ref, const HypothesisTimeline& hyp) {
  if (!(ref.scored_region == hyp.scored_region)) {
    throw Error("reference and hypothesis were clipped to different scored regions");
  }

  DerBreakdown b;
  b.audio_name = ref.audio_name;
  b.scored_region_ms = ref.scored_region.total_duration();
  b.english_ref_ms = ref.english.total_duration();
  b.mandarin_ref_ms = ref.mandarin.total_duration();
  b.ref_speech_ms = b.english_ref_ms + b.mandarin_ref_ms;
  b.clipped_ms = ref.clipped_ms;

  // Elementary segments between consecutive boundaries of any involved set.
  // All four language sets are clipped to the scored region, so segments
  // outside it carry all-false memberships and contribute nothing.
  std::vector<Ms> bounds;
  auto add_bounds = [&bounds](const SpanSet& set) {
    for (const Interval& s : set.spans()) {
      bounds.push_back(s.start);
      bounds.push_back(s.end);
    }
  };
  add_bounds(ref.english);
  add_bounds(ref.mandarin);
  add_bounds(hyp.english);
  add_bounds(hyp.mandarin);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const Ms lo = bounds[i];
    const Ms len = bounds[i + 1] - lo;
    const int r_english = ref.english.contains(lo) ? 1 : 0;
    const int r_mandarin = ref.mandarin.contains(lo) ? 1 : 0;
    const int h_english = hyp.english.contains(lo) ? 1 : 0;
    const int h_mandarin = hyp.mandarin.contains(lo) ? 1 : 0;
    const int n_ref = r_english + r_mandarin;
    const int n_hyp = h_english + h_mandarin;
    if (n_ref == 0 && n_hyp == 0) continue;
    const int matched = (r_english & h_english) + (r_mandarin & h_mandarin);
    b.correct_ms += len * matched;
    b.language_error_ms += len * (std::min(n_ref, n_hyp) - matched);
    b.missed_ms += len * std::max(0, n_ref - n_hyp);
    b.false_alarm_ms += len * std::max(0, n_hyp - n_ref);
    if (r_english && !h_english) b.english_error_ms += len;
    if (r_mandarin && !h_mandarin) b.mandarin_error_ms += len;
  }
  return b;
}

std::string to_string(Denominator d) {
  return d == Denominator::RefSpeech ? "ref-speech" : "scored-region";
}

LdReport aggregate(std::vector<DerBreakdown> breakdowns, Denominator denominator) {
  if (breakdowns.empty()) throw MetricError("nothing to aggregate");
  std::sort(breakdowns.begin(), breakdowns.end(),
            [](const DerBreakdown& a, const DerBreakdown& b) {
              return a.audio_name < b.audio_name;
            });

  LdReport report;
  report.denominator = denominator;
  DerBreakdown& total = report.totals;
  total.audio_name = "TOTAL";
  for (const DerBreakdown& b : breakdowns) {
    total.correct_ms += b.correct_ms;
    total.language_error_ms += b.language_error_ms;
    total.missed_ms += b.missed_ms;
    total.false_alarm_ms += b.false_alarm_ms;
    total.ref_speech_ms += b.ref_speech_ms;
    total.scored_region_ms += b.scored_region_ms;
    total.english_error_ms += b.english_error_ms;
    total.mandarin_error_ms += b.mandarin_error_ms;
    total.english_ref_ms += b.english_ref_ms;
    total.mandarin_ref_ms += b.mandarin_ref_ms;
    total.clipped_ms += b.clipped_ms;
  }
  report.per_recording = std::move(breakdowns);

  const Ms denom =
      denominator == Denominator::RefSpeech ? total.ref_speech_ms : total.scored_region_ms;
  if (denom <= 0) {
    throw MetricError("scoring denominator (" + to_string(denominator) + ") is zero");
  }
  report.denominator_ms = denom;
  const double d = static_cast<double>(denom);
  report.language_error_rate = static_cast<double>(total.language_error_ms) / d;
  report.missed_rate = static_cast<double>(total.missed_ms) / d;
  report.false_alarm_rate = static_cast<double>(total.false_alarm_ms) / d;
  report.der = static_cast<double>(total.language_error_ms + total.missed_ms +
                                   total.false_alarm_ms) /
               d;
  report.english_error_rate = static_cast<double>(total.english_error_ms) / d;
  report.mandarin_error_rate = static_cast<double>(total.mandarin_error_ms) / d;
  if (total.english_ref_ms > 0) {
    report.english_error_rate_english_denom =
        static_cast<double>(total.english_error_ms) /
        static_cast<double>(total.english_ref_ms);
  }
  if (total.mandarin_ref_ms > 0) {
    report.mandarin_error_rate_mandarin_denom =
        static_cast<double>(total.mandarin_error_ms) /
        static_cast<double>(total.mandarin_ref_ms);
  }
  return report;
}

DerBreakdown brute_force_score(const std::string& audio_name,
                               const std::vector<Grain>& grains,
                               const std::vector<Interval>& evaluated_regions,
                               const std::vector<Interval>& exclusions,
                               const std::vector<LanguageTurn>& turns,
                               Ms guard_ms) {
  Ms region_total = 0;
  for (const Interval& r : evaluated_regions) region_total += r.duration();
  if (region_total > guard_ms) {
    throw ConfigError("brute-force oracle refuses " + std::to_string(region_total) +
                      " ms of region time (guard " + std::to_string(guard_ms) + " ms)");
  }

  DerBreakdown b;
  b.audio_name = audio_name;
  for (const Interval& region : evaluated_regions) {
    for (Ms t = region.start; t < region.end; ++t) {
      bool dropped = false;
      for (const Interval& x : exclusions) {
        if (x.contains(t)) {
          dropped = true;
          break;
        }
      }
      if (!dropped) {
        for (const Grain& g : grains) {
          if (g.language == LanguageLabel::NonEvaluatedSpeech && g.span.contains(t)) {
            dropped = true;
            break;
          }
        }
      }
      if (dropped) continue;
      ++b.scored_region_ms;

      bool r_english = false, r_mandarin = false;
      for (const Grain& g : grains) {
        if (!g.span.contains(t)) continue;
        if (g.language == LanguageLabel::English) r_english = true;
        if (g.language == LanguageLabel::Mandarin) r_mandarin = true;
      }
      bool h_english = false, h_mandarin = false;
      for (const LanguageTurn& turn : turns) {
        if (t < turn.start || t >= turn.end) continue;
        if (turn.language == LanguageLabel::English) h_english = true;
        if (turn.language == LanguageLabel::Mandarin) h_mandarin = true;
      }

      const int n_ref = (r_english ? 1 : 0) + (r_mandarin ? 1 : 0);
      const int n_hyp = (h_english ? 1 : 0) + (h_mandarin ? 1 : 0);
      const int matched = ((r_english && h_english) ? 1 : 0) +
                          ((r_mandarin && h_mandarin) ? 1 : 0);
      b.correct_ms += matched;
      b.language_error_ms += std::min(n_ref, n_hyp) - matched;
      b.missed_ms += std::max(0, n_ref - n_hyp);
      b.false_alarm_ms += std::max(0, n_hyp - n_ref);
      b.ref_speech_ms += n_ref;
      if (r_english) ++b.english_ref_ms;
      if (r_mandarin) ++b.mandarin_ref_ms;
      if (r_english && !h_english) ++b.english_error_ms;
      if (r_mandarin && !h_mandarin) ++b.mandarin_error_ms;
    }
  }
  return b;
}

}  // namespace cseval
