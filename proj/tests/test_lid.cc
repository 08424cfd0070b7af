// tests/test_lid.cc

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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "cseval/error.h"
#include "cseval/lid.h"

using namespace cseval;

namespace {

std::vector<Trial> make_trials(const std::vector<double>& target_scores,
                               const std::vector<double>& nontarget_scores,
                               const std::string& audio = "A.wav") {
  std::vector<Trial> trials;
  int n = 0;
  for (double s : target_scores) {
    trials.push_back({{"A", "t" + std::to_string(++n), 0, 1}, audio, s, true});
  }
  for (double s : nontarget_scores) {
    trials.push_back({{"A", "n" + std::to_string(++n), 0, 1}, audio, s, false});
  }
  return trials;
}

// Exhaustive FAR/FRR at one threshold, counting trial by trial.
std::pair<double, double> count_rates(const std::vector<Trial>& trials, double threshold) {
  std::int64_t fa = 0, nn = 0, fr = 0, nt = 0;
  for (const Trial& t : trials) {
    const bool accepted = t.detection_score >= threshold;
    if (t.is_target) {
      ++nt;
      if (!accepted) ++fr;
    } else {
      ++nn;
      if (accepted) ++fa;
    }
  }
  return {static_cast<double>(fa) / nn, static_cast<double>(fr) / nt};
}

}  // namespace

TEST_CASE("build_trials orients toward English and applies exclusions") {
  const std::vector<Grain> reference = {
      {"A.wav", "a1", {0, 500}, LanguageLabel::English, false},
      {"A.wav", "a2", {500, 900}, LanguageLabel::Mandarin, false},
      {"A.wav", "a3", {900, 1200}, LanguageLabel::English, true},  // overlap: excluded
      {"A.wav", "a4", {1200, 1500}, LanguageLabel::NonSpeech, false},
  };
  const std::vector<ScoredSegment> scored = {
      {{"A", "a1", 0, 500}, 4.21080, -10.018997},
      {{"A", "a2", 500, 900}, 0.0, 0.0},
  };
  const TrialSet set = build_trials(reference, scored);
  REQUIRE(set.trials.size() == 2);
  CHECK(set.trials[0].detection_score == doctest::Approx(14.229797).epsilon(1e-12));
  CHECK(set.trials[0].is_target);
  CHECK(set.trials[1].detection_score == 0.0);
  CHECK(!set.trials[1].is_target);
  CHECK(set.n_excluded_overlap == 1);
  CHECK(set.n_excluded_nonspeech == 1);

  // Missing score for an eligible grain is an error.
  CHECK_THROWS_AS(build_trials(reference, {scored[0]}), MetricError);
  // A score with no eligible grain is an error too.
  std::vector<ScoredSegment> extra = scored;
  extra.push_back({{"A", "zz", 0, 7}, 1.0, 2.0});
  CHECK_THROWS_AS(build_trials(reference, extra), MetricError);
}

TEST_CASE("det curve endpoints and monotonicity") {
  const std::vector<Trial> trials = make_trials({1.0, 2.0}, {-1.0, -2.0});
  const std::vector<DetPoint> curve = det_curve(trials);
  CHECK(curve.front().far == 1.0);
  CHECK(curve.front().frr == 0.0);
  CHECK(curve.back().far == 0.0);
  CHECK(curve.back().frr == 1.0);
  bool perfect = false;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].far <= curve[i - 1].far);
    CHECK(curve[i].frr >= curve[i - 1].frr);
    if (curve[i].far == 0.0 && curve[i].frr == 0.0) perfect = true;
  }
  CHECK(perfect);
}

TEST_CASE("all-equal scores give exactly accept-all and reject-all") {
  const std::vector<Trial> trials = make_trials({0.5, 0.5}, {0.5});
  const std::vector<DetPoint> curve = det_curve(trials);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].far == 1.0);
  CHECK(curve[0].frr == 0.0);
  CHECK(curve[1].far == 0.0);
  CHECK(curve[1].frr == 1.0);
}

TEST_CASE("det curve matches exhaustive counting on random trials") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 40; ++it) {
    std::vector<double> targets, nontargets;
    for (int i = 0; i < 25; ++i) {
      targets.push_back(static_cast<double>(rng() % 21) / 2.0 - 3.0);
      nontargets.push_back(static_cast<double>(rng() % 21) / 2.0 - 7.0);
    }
    const std::vector<Trial> trials = make_trials(targets, nontargets);
    for (const DetPoint& p : det_curve(trials)) {
      const auto [far, frr] = count_rates(trials, p.threshold);
      CHECK(p.far == far);
      CHECK(p.frr == frr);
    }
  }
}

TEST_CASE("equal error rate on the frozen cases") {
  CHECK(equal_error_rate(make_trials({1.0, 2.0}, {-1.0, -2.0})) == 0.0);
  CHECK(equal_error_rate(make_trials({2.0, -1.0}, {-2.0, 1.0})) == 0.5);
  CHECK(equal_error_rate(make_trials({-1.0, -2.0}, {1.0, 2.0})) == 1.0);
  CHECK_THROWS_AS(equal_error_rate(make_trials({1.0}, {})), MetricError);
  CHECK_THROWS_AS(equal_error_rate(make_trials({}, {1.0})), MetricError);
}

TEST_CASE("equal error rate interpolates between bracketing points") {
  // targets {1,3,4}, non-targets {2}: the sweep gives
  //   t=2: FAR 1,  FRR 1/3   (diff +2/3)
  //   t=3: FAR 0,  FRR 1/3   (diff -1/3)
  // with no exact crossing, so the EER interpolates to 1/3.
  const std::vector<Trial> trials = make_trials({1, 3, 4}, {2});
  CHECK(equal_error_rate(trials) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("EER is invariant under strictly increasing score transforms") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 50; ++it) {
    std::vector<Trial> trials;
    const int n = 10 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      Trial t;
      t.audio_name = "A.wav";
      t.detection_score = static_cast<double>(rng() % 1000) / 10.0 - 50.0;
      t.is_target = (i % 2) == 0;  // both classes present
      trials.push_back(t);
    }
    const double before = equal_error_rate(trials);

    // Rank-preserving remap: sorted distinct scores -> strictly increasing
    // random values.  Exactly monotone, no floating-point collisions.
    std::vector<double> distinct;
    for (const Trial& t : trials) distinct.push_back(t.detection_score);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<double> remapped(distinct.size());
    double v = -1000.0;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      v += 0.125 + static_cast<double>(rng() % 1000);
      remapped[i] = v;
    }
    std::vector<Trial> transformed = trials;
    for (Trial& t : transformed) {
      const std::size_t rank =
          std::lower_bound(distinct.begin(), distinct.end(), t.detection_score) -
          distinct.begin();
      t.detection_score = remapped[rank];
    }
    CHECK(equal_error_rate(transformed) == before);
  }
}

TEST_CASE("EER is unchanged by swapping classes and negating scores") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 50; ++it) {
    std::vector<Trial> trials;
    for (int i = 0; i < 30; ++i) {
      Trial t;
      t.detection_score = static_cast<double>(rng() % 2000) / 7.0 - 140.0;
      t.is_target = (rng() % 2) == 0;
      trials.push_back(t);
    }
    bool has_target = false, has_nontarget = false;
    for (const Trial& t : trials) (t.is_target ? has_target : has_nontarget) = true;
    if (!has_target || !has_nontarget) continue;
    std::vector<Trial> swapped = trials;
    for (Trial& t : swapped) {
      t.is_target = !t.is_target;
      t.detection_score = -t.detection_score;
    }
    CHECK(equal_error_rate(swapped) == equal_error_rate(trials));
  }
}

TEST_CASE("balanced accuracy per file: frozen hand count") {
  // 3 English (2 decided English) and 1 Mandarin (decided Mandarin).
  std::vector<Trial> trials = make_trials({2.0, 1.0, -0.5}, {-1.0});
  std::int64_t ties = 0;
  const std::vector<FileLidScore> per_file = balanced_accuracy_per_file(trials, &ties);
  REQUIRE(per_file.size() == 1);
  CHECK(per_file[0].balanced_accuracy == (2.0 / 3.0 + 1.0) / 2.0);  // 5/6
  CHECK(per_file[0].recall_english == 2.0 / 3.0);
  CHECK(per_file[0].recall_mandarin == 1.0);
  CHECK(!per_file[0].single_language);
  CHECK(ties == 0);
}

TEST_CASE("balanced accuracy degenerate cases") {
  SUBCASE("all correct is 1.0") {
    const std::vector<FileLidScore> per_file =
        balanced_accuracy_per_file(make_trials({1.0, 2.0}, {-3.0}));
    CHECK(per_file[0].balanced_accuracy == 1.0);
  }
  SUBCASE("always-English predictor on a two-language file scores 0.5") {
    const std::vector<FileLidScore> per_file =
        balanced_accuracy_per_file(make_trials({1.0, 2.0}, {3.0, 4.0}));
    CHECK(per_file[0].balanced_accuracy == 0.5);
  }
  SUBCASE("single-language file is flagged and uses its own recall") {
    const std::vector<FileLidScore> per_file =
        balanced_accuracy_per_file(make_trials({1.0, -1.0}, {}));
    CHECK(per_file[0].single_language);
    CHECK(per_file[0].balanced_accuracy == 0.5);
  }
  SUBCASE("score zero decides Mandarin and counts as a tie") {
    std::int64_t ties = 0;
    const std::vector<FileLidScore> per_file =
        balanced_accuracy_per_file(make_trials({0.0}, {0.0}), &ties);
    CHECK(ties == 2);
    CHECK(per_file[0].recall_english == 0.0);
    CHECK(per_file[0].recall_mandarin == 1.0);
  }
}

TEST_CASE("balanced accuracy ignores score magnitudes") {
  std::mt19937_64 rng(43);
  std::vector<Trial> trials;
  for (int i = 0; i < 60; ++i) {
    Trial t;
    t.audio_name = "A" + std::to_string(i % 3) + ".wav";
    t.detection_score = static_cast<double>(rng() % 600) - 300.0;
    t.is_target = (rng() % 3) > 0;
    trials.push_back(t);
  }
  std::vector<Trial> scaled = trials;
  for (Trial& t : scaled) t.detection_score *= 1337.5;
  const auto a = balanced_accuracy_per_file(trials);
  const auto b = balanced_accuracy_per_file(scaled);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].balanced_accuracy == b[i].balanced_accuracy);
  }
}

TEST_CASE("accuracy is a flat recount") {
  std::vector<Trial> trials = make_trials({1, 1, 1, 1, 1, 1, -1, -1, -1}, {-1});
  // 6 correct targets + 1 correct non-target out of 10.
  CHECK(accuracy(trials) == 0.7);
  CHECK(accuracy(make_trials({-1}, {1})) == 0.0);
  CHECK_THROWS_AS(accuracy({}), MetricError);

  std::mt19937_64 rng(47);
  for (int it = 0; it < 50; ++it) {
    std::vector<Trial> random_trials;
    std::int64_t correct = 0;
    for (int i = 0; i < 200; ++i) {
      Trial t;
      t.detection_score = static_cast<double>(rng() % 2001) - 1000.0;
      t.is_target = (rng() % 2) == 0;
      if ((t.detection_score > 0.0) == t.is_target) ++correct;
      random_trials.push_back(t);
    }
    CHECK(accuracy(random_trials) == static_cast<double>(correct) / 200.0);
  }
}

TEST_CASE("random balanced scores land near EER 0.5") {
  std::mt19937_64 rng(53);
  std::vector<Trial> trials;
  for (int i = 0; i < 10'000; ++i) {
    Trial t;
    t.detection_score = static_cast<double>(rng()) / 1e18;  // independent of label
    t.is_target = (i % 2) == 0;
    trials.push_back(t);
  }
  const double eer = equal_error_rate(trials);
  CHECK(eer > 0.45);
  CHECK(eer < 0.55);
}

TEST_CASE("score_lid assembles the full report") {
  const std::vector<Grain> reference = {
      {"A.wav", "a1", {0, 500}, LanguageLabel::English, false},
      {"A.wav", "a2", {500, 900}, LanguageLabel::Mandarin, false},
      {"B.wav", "a1", {0, 700}, LanguageLabel::English, false},
      {"B.wav", "a2", {700, 900}, LanguageLabel::Mandarin, false},
  };
  const std::vector<ScoredSegment> scored = {
      {{"A", "a1", 0, 500}, 2.0, -2.0},
      {{"A", "a2", 500, 900}, -3.0, 3.0},
      {{"B", "a1", 0, 700}, 1.0, -1.0},
      {{"B", "a2", 700, 900}, -1.0, 1.0},
  };
  const LidReport report = score_lid(reference, scored);
  CHECK(report.eer == 0.0);
  CHECK(report.balanced_accuracy_macro == 1.0);
  CHECK(report.balanced_accuracy_pooled == 1.0);
  CHECK(report.accuracy == 1.0);
  CHECK(report.n_targets == 2);
  CHECK(report.n_nontargets == 2);
  REQUIRE(report.per_file.size() == 2);
  CHECK(report.per_file[0].eer.has_value());
  CHECK(*report.per_file[0].eer == 0.0);
}
