#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/schemes.hpp"

namespace nerkit {

// Exact-match counts for one label (or "ALL"). Rates are percentages.
struct LabelScore {
  std::string label;
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;

  double precision() const;  // 100*correct/predicted, 0 when predicted=0
  double recall() const;     // 100*correct/gold, 0 when gold=0
  double f1() const;
};

struct ScoreReport {
  LabelScore overall;                 // label "ALL"
  std::vector<LabelScore> per_label;  // lexicographic by label
};

// Harmonic mean of two percentages; 0 when both are 0.
double f_measure(double precision, double recall);

// Entity-level exact-match scoring. Both corpora are converted to BIO
// under the policy, decoded to spans, and intersected per sentence by
// exact (start, end, label).
ScoreReport score(const Corpus& gold, const Corpus& predicted,
                  RepairPolicy policy = RepairPolicy::Conll);

struct DiffRow {
  std::string label;
  std::size_t gold = 0;
  std::size_t predicted_a = 0;
  std::size_t predicted_b = 0;
  std::size_t correct_a = 0;
  std::size_t correct_b = 0;
  long long delta() const;  // correct_b - correct_a
};

struct DiffReport {
  DiffRow overall;
  std::vector<DiffRow> per_label;
};

// Correct-phrase counts of two systems against the same gold.
DiffReport diff_report(const Corpus& gold, const Corpus& predicted_a,
                       const Corpus& predicted_b, RepairPolicy policy = RepairPolicy::Conll);

// Presentation-only rounding: half-up to 2 decimals (73.745 -> 73.75).
double round_half_up2(double value);

// Aligned human-readable table / one "label P R F1 gold predicted correct"
// line per label.
std::string format_score_table(const ScoreReport& report);
std::string format_score_kv(const ScoreReport& report);
std::string format_diff_table(const DiffReport& report);

}  // namespace nerkit
