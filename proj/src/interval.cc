// src/interval.cc

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

#include "cseval/interval.h"

#include <algorithm>
#include <string>

#include "cseval/error.h"

namespace cseval {

SpanSet SpanSet::from_canonical(std::vector<Interval> spans) {
  SpanSet s;
  s.spans_ = std::move(spans);
  return s;
}

Ms SpanSet::total_duration() const {
  Ms total = 0;
  for (const Interval& s : spans_) total += s.duration();
  return total;
}

bool SpanSet::contains(Ms t) const {
  auto it = std::upper_bound(
      spans_.begin(), spans_.end(), t,
      [](Ms value, const Interval& s) { return value < s.start; });
  if (it == spans_.begin()) return false;
  --it;
  return t < it->end;
}

SpanSet normalize(const std::vector<Interval>& spans) {
  std::vector<Interval> kept;
  kept.reserve(spans.size());
  for (const Interval& s : spans) {
    if (s.start < 0 || s.end < s.start) {
      throw Error("malformed interval [" + std::to_string(s.start) + ", " +
                  std::to_string(s.end) + ")");
    }
    if (s.start == s.end) continue;  // zero length, drop
    kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });

  std::vector<Interval> merged;
  for (const Interval& s : kept) {
    if (!merged.empty() && s.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  return SpanSet::from_canonical(std::move(merged));
}

SpanSet intersect(const SpanSet& a, const SpanSet& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  const auto& as = a.spans();
  const auto& bs = b.spans();
  while (i < as.size() && j < bs.size()) {
    const Ms lo = std::max(as[i].start, bs[j].start);
    const Ms hi = std::min(as[i].end, bs[j].end);
    if (lo < hi) out.push_back({lo, hi});
    // advance whichever span ends first
    if (as[i].end < bs[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return SpanSet::from_canonical(std::move(out));
}

SpanSet subtract(const SpanSet& a, const SpanSet& b) {
  std::vector<Interval> out;
  std::size_t j = 0;
  const auto& bs = b.spans();
  for (const Interval& s : a.spans()) {
    Ms cursor = s.start;
    while (j < bs.size() && bs[j].end <= cursor) ++j;
    std::size_t k = j;
    while (k < bs.size() && bs[k].start < s.end) {
      if (bs[k].start > cursor) out.push_back({cursor, bs[k].start});
      cursor = std::max(cursor, bs[k].end);
      ++k;
    }
    if (cursor < s.end) out.push_back({cursor, s.end});
  }
  // Subtraction can leave spans adjacent to removed gaps; they are already
  // disjoint and sorted, but never adjacent to each other since the gap
  // between them is nonempty time of b.
  return SpanSet::from_canonical(std::move(out));
}

SpanSet unite(const SpanSet& a, const SpanSet& b) {
  std::vector<Interval> all;
  all.reserve(a.size() + b.size());
  all.insert(all.end(), a.spans().begin(), a.spans().end());
  all.insert(all.end(), b.spans().begin(), b.spans().end());
  return normalize(all);
}

}  // namespace cseval
