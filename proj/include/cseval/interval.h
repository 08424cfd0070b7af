// include/cseval/interval.h

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

#ifndef CSEVAL_INTERVAL_H_
#define CSEVAL_INTERVAL_H_

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace cseval {

// All timeline arithmetic is exact, in non-negative integer milliseconds.
using Ms = std::int64_t;

// Half-open time span [start, end).  Adjacent annotation boundaries
// (one span ending at t, the next starting at t) do not overlap, and
// duration counting is exact.
struct Interval {
  Ms start = 0;
  Ms end = 0;

  Ms duration() const { return end - start; }
  bool contains(Ms t) const { return t >= start && t < end; }
  bool overlaps(const Interval& o) const { return start < o.end && o.start < end; }

  bool operator==(const Interval&) const = default;
};

// Canonical set of time instants: spans sorted by start, pairwise disjoint,
// with adjacent spans (end == next.start) merged.  Immutable after
// construction; all operations return new sets.
class SpanSet {
 public:
  SpanSet() = default;

  const std::vector<Interval>& spans() const { return spans_; }
  bool empty() const { return spans_.empty(); }
  std::size_t size() const { return spans_.size(); }

  Ms total_duration() const;
  bool contains(Ms t) const;

  bool operator==(const SpanSet&) const = default;

  // Used by the algebra below, which maintains the canonical invariant
  // without re-normalizing.
  static SpanSet from_canonical(std::vector<Interval> spans);

 private:
  std::vector<Interval> spans_;
};

// Canonical union of arbitrary spans.  Zero-length inputs are dropped.
// Throws Error on start < 0 or end < start.
SpanSet normalize(const std::vector<Interval>& spans);

// Time common to both sets.
SpanSet intersect(const SpanSet& a, const SpanSet& b);

// Time in `a` and not in `b`.
SpanSet subtract(const SpanSet& a, const SpanSet& b);

// Union of two canonical sets.
SpanSet unite(const SpanSet& a, const SpanSet& b);

// Exactly the labels whose span set contains instant t.
template <class Label>
std::set<Label> active_labels_at(Ms t, const std::map<Label, SpanSet>& labeled) {
  std::set<Label> active;
  for (const auto& [label, spans] : labeled) {
    if (spans.contains(t)) active.insert(label);
  }
  return active;
}

}  // namespace cseval

#endif  // CSEVAL_INTERVAL_H_
