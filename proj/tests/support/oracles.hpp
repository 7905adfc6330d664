// Independent reference implementations the tests check library results
// against.  Everything here is written the dumb, obviously-correct way and
// shares no code with src/.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"

namespace oracles {

struct PrefLabel {
  char prefix;        // 'B','I','E','S' or 'O'
  std::string label;  // empty for O
};

inline PrefLabel pref(const std::string& tag) {
  if (tag == "O") return {'O', ""};
  return {tag[0], tag.substr(2)};
}

// Chunk extraction in the classic conlleval formulation: a position starts a
// chunk / ends a chunk based on (previous tag, current tag) predicates.  This
// is an entirely different decomposition from a state machine and serves as
// an oracle for decoding with the "conll" repair policy on arbitrary input.
inline bool chunk_start(const PrefLabel& prev, const PrefLabel& cur) {
  if (cur.prefix == 'B' || cur.prefix == 'S') return true;
  if (cur.prefix == 'O') return false;
  // cur is I or E
  if (prev.prefix == 'O' || prev.prefix == 'E' || prev.prefix == 'S') return true;
  if (prev.label != cur.label) return true;
  return false;
}

inline bool chunk_end(const PrefLabel& prev, const PrefLabel& cur) {
  if (prev.prefix == 'O') return false;
  if (prev.prefix == 'E' || prev.prefix == 'S') return true;
  // prev is B or I
  if (cur.prefix == 'O' || cur.prefix == 'B' || cur.prefix == 'S') return true;
  if (cur.prefix != 'O' && prev.label != cur.label) return true;
  return false;
}

inline std::vector<nerkit::EntitySpan> conlleval_spans(const std::vector<std::string>& tags) {
  std::vector<nerkit::EntitySpan> spans;
  PrefLabel prev{'O', ""};
  std::size_t open_start = 0;
  bool open = false;
  std::string open_label;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    PrefLabel cur = pref(tags[i]);
    if (open && chunk_end(prev, cur)) {
      spans.push_back({open_start, i, open_label});
      open = false;
    }
    if (!open && chunk_start(prev, cur)) {
      open = true;
      open_start = i;
      open_label = cur.label;
    }
    prev = cur;
  }
  if (open) spans.push_back({open_start, tags.size(), open_label});
  return spans;
}

// Merges adjacent same-label spans (what IO encoding cannot distinguish).
inline std::vector<nerkit::EntitySpan> merge_adjacent(std::vector<nerkit::EntitySpan> spans) {
  std::sort(spans.begin(), spans.end());
  std::vector<nerkit::EntitySpan> out;
  for (const auto& s : spans) {
    if (!out.empty() && out.back().end == s.start && out.back().label == s.label) {
      out.back().end = s.end;
    } else {
      out.push_back(s);
    }
  }
  return out;
}

// Quadratic span-set intersection.
inline std::vector<nerkit::EntitySpan> intersect_spans(const std::vector<nerkit::EntitySpan>& a,
                                                       const std::vector<nerkit::EntitySpan>& b) {
  std::vector<nerkit::EntitySpan> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x.start == y.start && x.end == y.end && x.label == y.label) {
        out.push_back(x);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Per-label gold/predicted/correct counts by brute force over two aligned
// corpora of span sets.
struct LabelCounts {
  std::size_t gold = 0, predicted = 0, correct = 0;
};

inline std::map<std::string, LabelCounts> count_spans(
    const std::vector<std::vector<nerkit::EntitySpan>>& gold,
    const std::vector<std::vector<nerkit::EntitySpan>>& pred) {
  std::map<std::string, LabelCounts> out;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    for (const auto& g : gold[s]) out[g.label].gold++;
    for (const auto& p : pred[s]) out[p.label].predicted++;
    for (const auto& c : intersect_spans(gold[s], pred[s])) out[c.label].correct++;
  }
  return out;
}

// Exact Binomial(n, p) central 99.9% acceptance interval [lo, hi]: lo is the
// largest k with P(X < k) <= 0.0005, hi the smallest k with P(X > k) <=
// 0.0005.  pmf computed iteratively in long double.
inline std::pair<std::uint64_t, std::uint64_t> binom_999_interval(std::uint64_t n,
                                                                  long double p) {
  std::vector<long double> pmf(n + 1);
  // log-space to survive large n
  std::vector<long double> logpmf(n + 1);
  long double lp = std::log(p), lq = std::log(1.0L - p);
  long double lognck = 0.0L;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (k > 0) lognck += std::log(static_cast<long double>(n - k + 1)) -
                         std::log(static_cast<long double>(k));
    logpmf[k] = lognck + static_cast<long double>(k) * lp +
                static_cast<long double>(n - k) * lq;
  }
  for (std::uint64_t k = 0; k <= n; ++k) pmf[k] = std::exp(logpmf[k]);

  long double tail = 0.0L;
  std::uint64_t lo = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (tail + pmf[k] > 0.0005L) {
      lo = k;
      break;
    }
    tail += pmf[k];
  }
  tail = 0.0L;
  std::uint64_t hi = n;
  for (std::uint64_t k = n;; --k) {
    if (tail + pmf[k] > 0.0005L) {
      hi = k;
      break;
    }
    tail += pmf[k];
    if (k == 0) break;
  }
  return {lo, hi};
}

}  // namespace oracles
