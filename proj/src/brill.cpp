// Transformation-based error-driven learning over scheme tags.
//
// Scoring note: a rule is applied as one in-place left-to-right sweep, so a
// rewrite can enable or disable matches of the same rule later in the
// sentence. Candidate scores must equal the error delta that the sweep
// actually produces. For most candidates a positional count over the frozen
// tags is provably identical to the sweep result; the exception is a
// backward tag condition (tag[-1]/tag[-2]) whose value is the rule's own
// from/to tag — those candidates are re-scored by simulating the sweep.

#include "nerkit/brill.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "nerkit/errors.hpp"
#include "nerkit/eval.hpp"
#include "nerkit/util.hpp"

namespace nerkit {

namespace {

struct SlotInfo {
  int offset;
  bool is_tag;
};

SlotInfo slot_info(Slot slot) {
  switch (slot) {
    case Slot::TagM2: return {-2, true};
    case Slot::TagM1: return {-1, true};
    case Slot::TagP1: return {+1, true};
    case Slot::TagP2: return {+2, true};
    case Slot::WordM2: return {-2, false};
    case Slot::WordM1: return {-1, false};
    case Slot::Word0: return {0, false};
    case Slot::WordP1: return {+1, false};
    case Slot::WordP2: return {+2, false};
  }
  return {0, false};
}

}  // namespace

std::string to_string(Slot slot) {
  SlotInfo info = slot_info(slot);
  char buf[16];
  if (info.offset == 0) {
    std::snprintf(buf, sizeof buf, "%s[0]", info.is_tag ? "tag" : "word");
  } else {
    std::snprintf(buf, sizeof buf, "%s[%+d]", info.is_tag ? "tag" : "word", info.offset);
  }
  return buf;
}

std::optional<Slot> parse_slot(std::string_view name) {
  static const std::array<Slot, 9> all = {Slot::TagM2,  Slot::TagM1,  Slot::TagP1,
                                          Slot::TagP2,  Slot::WordM2, Slot::WordM1,
                                          Slot::Word0,  Slot::WordP1, Slot::WordP2};
  for (Slot s : all) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

const std::vector<std::vector<Slot>>& rule_templates() {
  static const std::vector<std::vector<Slot>> templates = {
      {Slot::TagM1},
      {Slot::TagP1},
      {Slot::TagM2, Slot::TagM1},
      {Slot::TagP1, Slot::TagP2},
      {Slot::Word0},
      {Slot::WordM1},
      {Slot::WordP1},
      {Slot::Word0, Slot::TagM1},
      {Slot::Word0, Slot::TagP1},
      {Slot::TagM1, Slot::TagP1},
      {Slot::WordM1, Slot::Word0},
      {Slot::Word0, Slot::WordP1}};
  return templates;
}

// ---------------------------------------------------------------------------
// Application (string domain)

namespace {

bool condition_holds(std::span<const std::string> surfaces, std::span<const std::string> tags,
                     std::size_t i, const RuleCondition& cond) {
  SlotInfo info = slot_info(cond.slot);
  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + info.offset;
  if (j < 0 || j >= static_cast<std::ptrdiff_t>(tags.size())) return false;
  const std::string& have =
      info.is_tag ? tags[static_cast<std::size_t>(j)] : surfaces[static_cast<std::size_t>(j)];
  return have == cond.value;
}

}  // namespace

std::vector<std::string> apply_rules(std::span<const std::string> surfaces,
                                     std::vector<std::string> tags,
                                     std::span<const BrillRule> rules) {
  if (surfaces.size() != tags.size()) {
    throw InputError("apply_rules: " + std::to_string(surfaces.size()) + " surfaces vs " +
                     std::to_string(tags.size()) + " tags");
  }
  for (const BrillRule& rule : rules) {
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (tags[i] != rule.from_tag) continue;
      bool ok = true;
      for (const RuleCondition& cond : rule.conditions) {
        if (!condition_holds(surfaces, tags, i, cond)) {
          ok = false;
          break;
        }
      }
      if (ok) tags[i] = rule.to_tag;
    }
  }
  return tags;
}

Corpus apply_rules(const Corpus& tagged, std::span<const BrillRule> rules) {
  std::vector<Sentence> sentences;
  sentences.reserve(tagged.sentences.size());
  for (const Sentence& s : tagged.sentences) {
    std::vector<std::string> tags = apply_rules(s.surfaces(), s.tags(), rules);
    Sentence out;
    out.tokens.reserve(s.tokens.size());
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      out.tokens.push_back(Token{s.tokens[i].surface, std::move(tags[i])});
    }
    sentences.push_back(std::move(out));
  }
  Corpus out = make_corpus(std::move(sentences), tagged.scheme);
  out.doc_starts = tagged.doc_starts;
  return out;
}

// ---------------------------------------------------------------------------
// Learning (interned int domain)

namespace {

struct LearnSentence {
  std::vector<int> words;
  std::vector<int> cur;
  std::vector<int> gold;
  std::vector<int> words_sorted;  // for presence checks

  bool has_word(int w) const {
    return std::binary_search(words_sorted.begin(), words_sorted.end(), w);
  }
};

struct Candidate {
  int tmpl;
  int from;
  int to;
  std::array<int, 2> values;  // values[1] = -1 for one-slot templates
  long long good = 0;
  long long bad = 0;

  long long score() const { return good - bad; }
  double accuracy() const {
    long long denom = good + bad;
    return denom == 0 ? 0.0 : static_cast<double>(good) / static_cast<double>(denom);
  }
};

struct KeyHash {
  std::size_t operator()(const std::array<int, 5>& k) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (int v : k) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9E3779B97F4A7C15ull +
           (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class Interner {
 public:
  int id(const std::string& s) {
    auto [it, inserted] = ids_.try_emplace(s, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(s);
    return it->second;
  }
  const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> names_;
};

// Instantiates one template at (sentence, position) against the frozen
// tags. Returns false when a slot is out of range.
bool instantiate(const LearnSentence& s, std::size_t i, const std::vector<Slot>& slots,
                 std::array<int, 2>& values) {
  values = {-1, -1};
  for (std::size_t k = 0; k < slots.size(); ++k) {
    SlotInfo info = slot_info(slots[k]);
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + info.offset;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(s.cur.size())) return false;
    values[k] = info.is_tag ? s.cur[static_cast<std::size_t>(j)]
                            : s.words[static_cast<std::size_t>(j)];
  }
  return true;
}

bool int_conditions_hold(const LearnSentence& s, const std::vector<int>& tags, std::size_t i,
                         const std::vector<Slot>& slots, const std::array<int, 2>& values) {
  for (std::size_t k = 0; k < slots.size(); ++k) {
    SlotInfo info = slot_info(slots[k]);
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + info.offset;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(tags.size())) return false;
    int have = info.is_tag ? tags[static_cast<std::size_t>(j)]
                           : s.words[static_cast<std::size_t>(j)];
    if (have != values[k]) return false;
  }
  return true;
}

// One simulated sweep of `cand` over `scratch` (a copy of s.cur); counts
// fixed and broken positions against gold.
void sweep_count(const LearnSentence& s, const Candidate& cand, const std::vector<Slot>& slots,
                 std::vector<int>& scratch, long long& good, long long& bad) {
  scratch = s.cur;
  for (std::size_t i = 0; i < scratch.size(); ++i) {
    if (scratch[i] != cand.from) continue;
    if (!int_conditions_hold(s, scratch, i, slots, cand.values)) continue;
    scratch[i] = cand.to;
    if (s.gold[i] == cand.to) ++good;
    else if (s.gold[i] == cand.from) ++bad;
  }
}

// True when positional counting can differ from the sweep: a backward tag
// condition whose value the sweep itself creates (to) or consumes (from).
bool needs_simulation(const Candidate& cand, const std::vector<Slot>& slots) {
  for (std::size_t k = 0; k < slots.size(); ++k) {
    SlotInfo info = slot_info(slots[k]);
    if (!info.is_tag || info.offset >= 0) continue;
    if (cand.values[k] == cand.from || cand.values[k] == cand.to) return true;
  }
  return false;
}

std::string serialize_conditions(const BrillRule& rule);

std::string candidate_key_string(const Candidate& cand, const std::vector<Slot>& slots,
                                 const Interner& tags, const Interner& words) {
  BrillRule rule;
  rule.from_tag = tags.name(cand.from);
  rule.to_tag = tags.name(cand.to);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    SlotInfo info = slot_info(slots[k]);
    rule.conditions.push_back(RuleCondition{
        slots[k], info.is_tag ? tags.name(cand.values[k]) : words.name(cand.values[k])});
  }
  return "FROM " + rule.from_tag + " TO " + rule.to_tag + " IF " + serialize_conditions(rule);
}

void check_learning_alignment(const Corpus& initial, const Corpus& gold) {
  if (initial.scheme != gold.scheme) {
    throw InputError("learning corpora use different schemes (" + to_string(initial.scheme) +
                     " vs " + to_string(gold.scheme) + ")");
  }
  if (initial.sentences.size() != gold.sentences.size()) {
    throw InputError("learning corpora disagree on sentence count (" +
                     std::to_string(initial.sentences.size()) + " vs " +
                     std::to_string(gold.sentences.size()) + ")");
  }
  for (std::size_t si = 0; si < initial.sentences.size(); ++si) {
    const Sentence& a = initial.sentences[si];
    const Sentence& b = gold.sentences[si];
    if (a.tokens.size() != b.tokens.size()) {
      throw InputError("sentence " + std::to_string(si) +
                       ": learning corpora disagree on token count");
    }
    for (std::size_t i = 0; i < a.tokens.size(); ++i) {
      if (a.tokens[i].surface != b.tokens[i].surface) {
        throw InputError("sentence " + std::to_string(si) + ", token " + std::to_string(i) +
                         ": learning corpora disagree on the surface form");
      }
    }
  }
}

}  // namespace

std::vector<BrillRule> learn_rules(const Corpus& initial, const Corpus& gold,
                                   const BrillConfig& cfg) {
  if (!(cfg.min_acc >= 0.0 && cfg.min_acc <= 1.0)) {
    throw InputError("min_acc must be in [0,1]");
  }
  if (cfg.min_score < 1) throw InputError("min_score must be >= 1");
  check_learning_alignment(initial, gold);

  Interner tags;
  Interner words;
  std::vector<LearnSentence> sentences(initial.sentences.size());
  for (std::size_t si = 0; si < initial.sentences.size(); ++si) {
    LearnSentence& ls = sentences[si];
    const Sentence& a = initial.sentences[si];
    const Sentence& b = gold.sentences[si];
    ls.words.reserve(a.tokens.size());
    for (std::size_t i = 0; i < a.tokens.size(); ++i) {
      ls.words.push_back(words.id(a.tokens[i].surface));
      ls.cur.push_back(tags.id(a.tokens[i].tag));
      ls.gold.push_back(tags.id(b.tokens[i].tag));
    }
    ls.words_sorted = ls.words;
    std::sort(ls.words_sorted.begin(), ls.words_sorted.end());
    ls.words_sorted.erase(std::unique(ls.words_sorted.begin(), ls.words_sorted.end()),
                          ls.words_sorted.end());
  }

  const auto& templates = rule_templates();
  // Per-sentence tag occurrence counts, maintained across rule applications.
  std::vector<std::vector<int>> tag_count(sentences.size());
  auto rebuild_tag_count = [&](std::size_t si) {
    auto& counts = tag_count[si];
    counts.assign(tags.size(), 0);
    for (int t : sentences[si].cur) ++counts[static_cast<std::size_t>(t)];
  };
  for (std::size_t si = 0; si < sentences.size(); ++si) rebuild_tag_count(si);

  std::vector<BrillRule> rules;
  std::vector<Candidate> candidates;
  std::unordered_map<std::array<int, 5>, std::size_t, KeyHash> index;
  std::unordered_map<std::array<int, 5>, std::vector<std::size_t>, KeyHash> by_condition;
  std::vector<int> scratch;

  while (rules.size() < cfg.max_rules) {
    candidates.clear();
    index.clear();
    by_condition.clear();

    // Pass 1: enumerate candidates at error positions; positional good.
    for (const LearnSentence& s : sentences) {
      for (std::size_t i = 0; i < s.cur.size(); ++i) {
        if (s.cur[i] == s.gold[i]) continue;
        for (int t = 0; t < static_cast<int>(templates.size()); ++t) {
          std::array<int, 2> values;
          if (!instantiate(s, i, templates[static_cast<std::size_t>(t)], values)) continue;
          std::array<int, 5> key = {t, s.cur[i], s.gold[i], values[0], values[1]};
          auto [it, inserted] = index.try_emplace(key, candidates.size());
          if (inserted) {
            Candidate cand;
            cand.tmpl = t;
            cand.from = s.cur[i];
            cand.to = s.gold[i];
            cand.values = values;
            candidates.push_back(cand);
            by_condition[{t, s.cur[i], values[0], values[1], 0}].push_back(it->second);
          }
          ++candidates[it->second].good;
        }
      }
    }
    if (candidates.empty()) break;

    // Pass 2: positional bad at correct positions.
    for (const LearnSentence& s : sentences) {
      for (std::size_t i = 0; i < s.cur.size(); ++i) {
        if (s.cur[i] != s.gold[i]) continue;
        for (int t = 0; t < static_cast<int>(templates.size()); ++t) {
          std::array<int, 2> values;
          if (!instantiate(s, i, templates[static_cast<std::size_t>(t)], values)) continue;
          auto it = by_condition.find({t, s.cur[i], values[0], values[1], 0});
          if (it == by_condition.end()) continue;
          for (std::size_t ci : it->second) ++candidates[ci].bad;
        }
      }
    }

    // Sweep-exact re-scoring for history-dependent candidates.
    for (Candidate& cand : candidates) {
      const auto& slots = templates[static_cast<std::size_t>(cand.tmpl)];
      if (!needs_simulation(cand, slots)) continue;
      cand.good = 0;
      cand.bad = 0;
      for (std::size_t si = 0; si < sentences.size(); ++si) {
        if (tag_count[si][static_cast<std::size_t>(cand.from)] == 0) continue;
        bool plausible = true;
        for (std::size_t k = 0; k < slots.size() && plausible; ++k) {
          SlotInfo info = slot_info(slots[k]);
          if (info.is_tag) {
            // A tag value other than to_tag must already be present.
            if (cand.values[k] != cand.to &&
                tag_count[si][static_cast<std::size_t>(cand.values[k])] == 0) {
              plausible = false;
            }
          } else if (!sentences[si].has_word(cand.values[k])) {
            plausible = false;
          }
        }
        if (!plausible) continue;
        sweep_count(sentences[si], cand, slots, scratch, cand.good, cand.bad);
      }
    }

    // Selection: max score, then max accuracy, then smallest serialization.
    const Candidate* best = nullptr;
    std::string best_key;
    for (const Candidate& cand : candidates) {
      if (cand.accuracy() < cfg.min_acc) continue;
      if (cand.score() < 1) continue;
      if (!best || cand.score() > best->score() ||
          (cand.score() == best->score() && cand.accuracy() > best->accuracy())) {
        best = &cand;
        best_key.clear();
        continue;
      }
      if (cand.score() == best->score() && cand.accuracy() == best->accuracy()) {
        if (best_key.empty()) {
          best_key = candidate_key_string(*best, templates[static_cast<std::size_t>(best->tmpl)],
                                          tags, words);
        }
        std::string key = candidate_key_string(
            cand, templates[static_cast<std::size_t>(cand.tmpl)], tags, words);
        if (key < best_key) {
          best = &cand;
          best_key = std::move(key);
        }
      }
    }
    if (!best || best->score() < cfg.min_score) break;

    // Adopt and apply (real in-place sweep on every sentence).
    const auto& slots = templates[static_cast<std::size_t>(best->tmpl)];
    BrillRule rule;
    rule.from_tag = tags.name(best->from);
    rule.to_tag = tags.name(best->to);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      SlotInfo info = slot_info(slots[k]);
      rule.conditions.push_back(RuleCondition{
          slots[k],
          info.is_tag ? tags.name(best->values[k]) : words.name(best->values[k])});
    }
    rule.score = best->score();
    rule.accuracy = best->accuracy();

    for (std::size_t si = 0; si < sentences.size(); ++si) {
      LearnSentence& s = sentences[si];
      bool touched = false;
      for (std::size_t i = 0; i < s.cur.size(); ++i) {
        if (s.cur[i] != best->from) continue;
        if (!int_conditions_hold(s, s.cur, i, slots, best->values)) continue;
        s.cur[i] = best->to;
        touched = true;
      }
      if (touched) rebuild_tag_count(si);
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

TuneResult tune_min_score(const Corpus& gold_learn, const Corpus& initial_learn,
                          const Corpus& gold_eval, const Corpus& initial_eval,
                          std::span<const long long> candidate_scores,
                          const BrillConfig& base_cfg) {
  if (candidate_scores.empty()) throw InputError("tune_min_score: no candidate thresholds");
  std::vector<long long> thresholds(candidate_scores.begin(), candidate_scores.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  if (thresholds.front() < 1) throw InputError("tune_min_score: thresholds must be >= 1");

  // The greedy rule sequence does not depend on the threshold, so one run
  // at the smallest threshold yields every candidate's list by truncation.
  BrillConfig cfg = base_cfg;
  cfg.min_score = thresholds.front();
  std::vector<BrillRule> full = learn_rules(initial_learn, gold_learn, cfg);

  TuneResult result;
  for (long long s : thresholds) {
    std::size_t cut = full.size();
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (full[i].score < s) {
        cut = i;
        break;
      }
    }
    std::span<const BrillRule> prefix(full.data(), cut);
    Corpus corrected = apply_rules(initial_eval, prefix);
    ScoreReport report = score(gold_eval, corrected, RepairPolicy::Conll);
    TuneCandidate tc;
    tc.min_score = s;
    tc.f1 = report.overall.f1();
    tc.rule_count = cut;
    result.candidates.push_back(tc);
  }

  const TuneCandidate* winner = &result.candidates.front();
  for (const TuneCandidate& tc : result.candidates) {
    // >= : ties go to the larger (safer) threshold; candidates are sorted.
    if (tc.f1 >= winner->f1) winner = &tc;
  }
  result.best_min_score = winner->min_score;
  result.rules.assign(full.begin(),
                      full.begin() + static_cast<std::ptrdiff_t>(winner->rule_count));
  return result;
}

// ---------------------------------------------------------------------------
// Rule file format

namespace {

bool needs_quoting(const std::string& v) {
  if (v.empty()) return true;
  for (char c : v) {
    if (c == ' ' || c == '\t' || c == '"' || c == '\\' || c == '#') return true;
  }
  return false;
}

std::string quote_value(const std::string& v) {
  if (!needs_quoting(v)) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_accuracy(double acc) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", acc);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string serialize_conditions(const BrillRule& rule) {
  std::string out;
  for (std::size_t k = 0; k < rule.conditions.size(); ++k) {
    if (k > 0) out += " AND ";
    out += to_string(rule.conditions[k].slot) + "=" + quote_value(rule.conditions[k].value);
  }
  return out;
}

// Splits a rule line into tokens; a '"' opens a quoted span (backslash
// escapes) that may sit anywhere inside a token.
std::vector<std::string> lex_rule_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> tokens;
  std::string cur;
  bool in_token = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == ' ' || c == '\t') {
      if (in_token) {
        tokens.push_back(cur);
        cur.clear();
        in_token = false;
      }
      continue;
    }
    in_token = true;
    if (c == '"') {
      ++i;
      for (;; ++i) {
        if (i >= line.size()) {
          throw InputError("rule file line " + std::to_string(line_no) + ": unterminated quote");
        }
        if (line[i] == '\\') {
          if (i + 1 >= line.size()) {
            throw InputError("rule file line " + std::to_string(line_no) +
                             ": dangling escape");
          }
          cur += line[++i];
          continue;
        }
        if (line[i] == '"') break;
        cur += line[i];
      }
      continue;
    }
    cur += c;
  }
  if (in_token) tokens.push_back(cur);
  return tokens;
}

[[noreturn]] void bad_rule(std::size_t line_no, const std::string& why) {
  throw InputError("rule file line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

std::string serialize_rule(const BrillRule& rule) {
  return "FROM " + quote_value(rule.from_tag) + " TO " + quote_value(rule.to_tag) + " IF " +
         serialize_conditions(rule) + " ; score=" + std::to_string(rule.score) +
         " acc=" + format_accuracy(rule.accuracy);
}

std::string serialize_rules(std::span<const BrillRule> rules) {
  std::string out;
  for (const BrillRule& rule : rules) {
    out += serialize_rule(rule);
    out += '\n';
  }
  return out;
}

std::vector<BrillRule> parse_rules(std::istream& in) {
  std::vector<BrillRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    std::vector<std::string> tok = lex_rule_line(line, line_no);
    std::size_t pos = 0;
    auto need = [&](const char* what) -> const std::string& {
      if (pos >= tok.size()) bad_rule(line_no, std::string("missing ") + what);
      return tok[pos++];
    };
    if (need("FROM") != "FROM") bad_rule(line_no, "expected FROM");
    BrillRule rule;
    rule.from_tag = need("source tag");
    if (need("TO") != "TO") bad_rule(line_no, "expected TO");
    rule.to_tag = need("target tag");
    if (need("IF") != "IF") bad_rule(line_no, "expected IF");

    for (;;) {
      const std::string& cond = need("condition");
      std::size_t eq = cond.find('=');
      if (eq == std::string::npos) bad_rule(line_no, "condition \"" + cond + "\" lacks '='");
      std::optional<Slot> slot = parse_slot(cond.substr(0, eq));
      if (!slot) bad_rule(line_no, "unknown slot \"" + cond.substr(0, eq) + "\"");
      rule.conditions.push_back(RuleCondition{*slot, cond.substr(eq + 1)});
      if (pos >= tok.size()) bad_rule(line_no, "missing ';' after conditions");
      if (tok[pos] == "AND") {
        ++pos;
        continue;
      }
      break;
    }
    if (need(";") != ";") bad_rule(line_no, "expected ';'");
    const std::string& score_tok = need("score");
    if (!score_tok.starts_with("score=")) bad_rule(line_no, "expected score=<int>");
    try {
      std::string digits = score_tok.substr(6);
      std::size_t used = 0;
      rule.score = std::stoll(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
      bad_rule(line_no, "bad score \"" + score_tok + "\"");
    }
    const std::string& acc_tok = need("acc");
    if (!acc_tok.starts_with("acc=")) bad_rule(line_no, "expected acc=<decimal>");
    try {
      std::size_t used = 0;
      rule.accuracy = std::stod(acc_tok.substr(4), &used);
      if (used != acc_tok.size() - 4) throw std::invalid_argument(acc_tok);
    } catch (const std::exception&) {
      bad_rule(line_no, "bad accuracy \"" + acc_tok + "\"");
    }
    if (pos != tok.size()) bad_rule(line_no, "trailing tokens after accuracy");
    if (rule.from_tag == rule.to_tag) bad_rule(line_no, "FROM and TO tags are equal");
    if (rule.conditions.empty() || rule.conditions.size() > 2) {
      bad_rule(line_no, "rules take one or two conditions");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<BrillRule> parse_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open rule file: " + path);
  return parse_rules(in);
}

void write_rules_file(std::span<const BrillRule> rules, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write rule file: " + path);
  out << serialize_rules(rules);
  if (!out) throw InputError("failed writing rule file: " + path);
}

}  // namespace nerkit
