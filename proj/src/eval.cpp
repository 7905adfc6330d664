// Entity-level exact-match scoring (conlleval-style) and two-system diffs.

#include "nerkit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "nerkit/errors.hpp"

namespace nerkit {

double f_measure(double precision, double recall) {
  double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

double LabelScore::precision() const {
  return predicted == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(predicted);
}

double LabelScore::recall() const {
  return gold == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(gold);
}

double LabelScore::f1() const { return f_measure(precision(), recall()); }

long long DiffRow::delta() const {
  return static_cast<long long>(correct_b) - static_cast<long long>(correct_a);
}

double round_half_up2(double value) {
  if (value < 0.0) return -round_half_up2(-value);
  return std::floor(value * 100.0 + 0.5) / 100.0;
}

namespace {

void check_aligned(const Corpus& gold, const Corpus& other, const char* what) {
  if (gold.sentences.size() != other.sentences.size()) {
    throw InputError(std::string(what) + ": sentence count mismatch (gold " +
                     std::to_string(gold.sentences.size()) + " vs " +
                     std::to_string(other.sentences.size()) + ")");
  }
  for (std::size_t i = 0; i < gold.sentences.size(); ++i) {
    if (gold.sentences[i].tokens.size() != other.sentences[i].tokens.size()) {
      throw InputError(std::string(what) + ": sentence " + std::to_string(i) +
                       " token count mismatch (gold " +
                       std::to_string(gold.sentences[i].tokens.size()) + " vs " +
                       std::to_string(other.sentences[i].tokens.size()) + ")");
    }
  }
}

std::vector<std::vector<EntitySpan>> decode_all(const Corpus& corpus, RepairPolicy policy) {
  std::vector<std::vector<EntitySpan>> out;
  out.reserve(corpus.sentences.size());
  for (const Sentence& s : corpus.sentences) {
    std::vector<EntitySpan> spans = decode_spans(s.tags(), corpus.scheme, policy);
    std::sort(spans.begin(), spans.end());
    out.push_back(std::move(spans));
  }
  return out;
}

std::vector<EntitySpan> intersect(const std::vector<EntitySpan>& a,
                                  const std::vector<EntitySpan>& b) {
  std::vector<EntitySpan> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string format_rate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", round_half_up2(v));
  return buf;
}

}  // namespace

ScoreReport score(const Corpus& gold, const Corpus& predicted, RepairPolicy policy) {
  check_aligned(gold, predicted, "score");
  std::vector<std::vector<EntitySpan>> gold_spans = decode_all(gold, policy);
  std::vector<std::vector<EntitySpan>> pred_spans = decode_all(predicted, policy);

  std::map<std::string, LabelScore> by_label;
  ScoreReport report;
  report.overall.label = "ALL";
  for (std::size_t si = 0; si < gold_spans.size(); ++si) {
    for (const EntitySpan& s : gold_spans[si]) ++by_label[s.label].gold;
    for (const EntitySpan& s : pred_spans[si]) ++by_label[s.label].predicted;
    for (const EntitySpan& s : intersect(gold_spans[si], pred_spans[si])) {
      ++by_label[s.label].correct;
    }
  }
  for (auto& [label, ls] : by_label) {
    ls.label = label;
    report.overall.gold += ls.gold;
    report.overall.predicted += ls.predicted;
    report.overall.correct += ls.correct;
    report.per_label.push_back(ls);
  }
  return report;
}

DiffReport diff_report(const Corpus& gold, const Corpus& predicted_a, const Corpus& predicted_b,
                       RepairPolicy policy) {
  check_aligned(gold, predicted_a, "diff (system A)");
  check_aligned(gold, predicted_b, "diff (system B)");
  std::vector<std::vector<EntitySpan>> g = decode_all(gold, policy);
  std::vector<std::vector<EntitySpan>> a = decode_all(predicted_a, policy);
  std::vector<std::vector<EntitySpan>> b = decode_all(predicted_b, policy);

  std::map<std::string, DiffRow> by_label;
  DiffReport report;
  report.overall.label = "ALL";
  for (std::size_t si = 0; si < g.size(); ++si) {
    for (const EntitySpan& s : g[si]) ++by_label[s.label].gold;
    for (const EntitySpan& s : a[si]) ++by_label[s.label].predicted_a;
    for (const EntitySpan& s : b[si]) ++by_label[s.label].predicted_b;
    for (const EntitySpan& s : intersect(g[si], a[si])) ++by_label[s.label].correct_a;
    for (const EntitySpan& s : intersect(g[si], b[si])) ++by_label[s.label].correct_b;
  }
  for (auto& [label, row] : by_label) {
    row.label = label;
    report.overall.gold += row.gold;
    report.overall.predicted_a += row.predicted_a;
    report.overall.predicted_b += row.predicted_b;
    report.overall.correct_a += row.correct_a;
    report.overall.correct_b += row.correct_b;
    report.per_label.push_back(row);
  }
  return report;
}

std::string format_score_table(const ScoreReport& report) {
  std::size_t label_width = 5;  // "label"
  for (const LabelScore& ls : report.per_label) label_width = std::max(label_width, ls.label.size());
  label_width = std::max(label_width, report.overall.label.size());

  std::ostringstream out;
  auto row = [&](const LabelScore& ls) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-*s  %9s %9s %9s  %8zu %9zu %8zu\n",
                  static_cast<int>(label_width), ls.label.c_str(),
                  format_rate(ls.precision()).c_str(), format_rate(ls.recall()).c_str(),
                  format_rate(ls.f1()).c_str(), ls.gold, ls.predicted, ls.correct);
    out << buf;
  };
  char head[160];
  std::snprintf(head, sizeof head, "%-*s  %9s %9s %9s  %8s %9s %8s\n",
                static_cast<int>(label_width), "label", "precision", "recall", "f1", "gold",
                "predicted", "correct");
  out << head;
  row(report.overall);
  for (const LabelScore& ls : report.per_label) row(ls);
  return out.str();
}

std::string format_score_kv(const ScoreReport& report) {
  std::ostringstream out;
  auto row = [&](const LabelScore& ls) {
    out << ls.label << ' ' << format_rate(ls.precision()) << ' ' << format_rate(ls.recall())
        << ' ' << format_rate(ls.f1()) << ' ' << ls.gold << ' ' << ls.predicted << ' '
        << ls.correct << '\n';
  };
  row(report.overall);
  for (const LabelScore& ls : report.per_label) row(ls);
  return out.str();
}

std::string format_diff_table(const DiffReport& report) {
  std::size_t label_width = 5;
  for (const DiffRow& r : report.per_label) label_width = std::max(label_width, r.label.size());

  std::ostringstream out;
  auto row = [&](const DiffRow& r) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-*s  %8zu  %9zu %9zu  %7zu %7zu  %+6lld\n",
                  static_cast<int>(label_width), r.label.c_str(), r.gold, r.predicted_a,
                  r.predicted_b, r.correct_a, r.correct_b, r.delta());
    out << buf;
  };
  char head[200];
  std::snprintf(head, sizeof head, "%-*s  %8s  %9s %9s  %7s %7s  %6s\n",
                static_cast<int>(label_width), "label", "gold", "pred_a", "pred_b", "corr_a",
                "corr_b", "delta");
  out << head;
  row(report.overall);
  for (const DiffRow& r : report.per_label) row(r);
  return out.str();
}

}  // namespace nerkit
