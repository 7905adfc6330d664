// Shipping gate: one check per release criterion. Each prints PASS or FAIL
// with a diagnostic on failure; the exit code is the number of failures.
// Tolerances and trial counts are pinned here, next to the checks they gate.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nerkit/augment.hpp"
#include "nerkit/brill.hpp"
#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/eval.hpp"
#include "nerkit/pipeline.hpp"
#include "nerkit/random.hpp"
#include "nerkit/schemes.hpp"
#include "nerkit/semisup.hpp"
#include "nerkit/taggers.hpp"
#include "nerkit/util.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nerkit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// ---- pinned tolerances and budgets -------------------------------------
constexpr double kAnchorTol = 0.005;         // f_measure paper anchors
constexpr long long kGoldInversionEntities = 1;  // implied gold counts
constexpr double kSisUniformTol = 0.02;      // permutation frequency slack
constexpr double kGrowthRatioLo = 3.8;       // token growth, all 3 techniques
constexpr double kGrowthRatioHi = 4.3;
constexpr double kBudgetSchemesSec = 5.0;
constexpr double kBudgetRepairSec = 5.0;
constexpr double kBudgetBrillSec = 30.0;
constexpr double kBudgetPipelineSec = 300.0;
constexpr int kSpanSets = 1000;
constexpr int kRepairSeqs = 1000;
constexpr int kScorerPairs = 500;
constexpr int kAugSentences = 1000;
constexpr int kConsensusPairs = 500;
constexpr int kSisTrials = 10000;
constexpr std::size_t kLwtrTokens = 10000;
constexpr std::size_t kPainPositions = 50;
constexpr std::size_t kProbeSentences = 1000;

struct Stopwatch {
  Clock::time_point t0 = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Every check body returns "" on success, or a description of what broke.
using Check = std::function<std::string()>;

int run_criterion(int number, const std::string& title, const Check& body) {
  std::string detail;
  try {
    detail = body();
  } catch (const std::exception& e) {
    detail = std::string("unexpected exception: ") + e.what();
  }
  std::printf("criterion %2d  %-58s  %s\n", number, title.c_str(),
              detail.empty() ? "PASS" : "FAIL");
  if (!detail.empty()) std::printf("              -> %s\n", detail.c_str());
  std::fflush(stdout);
  return detail.empty() ? 0 : 1;
}

std::string data_path(const std::string& name) {
  return std::string(NERKIT_DATA_DIR) + "/" + name;
}

fs::path scratch_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() /
               ("nerkit-accept-" + tag + "-" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

Sentence sentence_of(const std::vector<std::string>& surfaces,
                     const std::vector<std::string>& tags) {
  Sentence s;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    s.tokens.push_back(Token{surfaces[i], tags[i]});
  }
  return s;
}

std::vector<std::string> random_surfaces(gen::Rng& rng, std::size_t len) {
  std::vector<std::string> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(gen::small_vocab()[rng.below(gen::small_vocab().size())]);
  }
  return out;
}

// ---- criterion 1: scheme encode/decode round-trips ----------------------

std::string check_scheme_round_trips() {
  Stopwatch sw;
  gen::Rng rng(101);
  for (int trial = 0; trial < kSpanSets; ++trial) {
    std::size_t len = 1 + rng.below(40);
    std::vector<EntitySpan> spans = gen::random_spans(rng, len);
    for (Scheme scheme : {Scheme::BIO, Scheme::BIOES}) {
      std::vector<std::string> tags = encode_tags(spans, len, scheme);
      if (decode_spans(tags, scheme, RepairPolicy::Strict) != spans) {
        return "encode->decode not identity (" + to_string(scheme) + ", trial " +
               std::to_string(trial) + ")";
      }
    }
  }
  for (int trial = 0; trial < kSpanSets; ++trial) {
    std::size_t len = 1 + rng.below(40);
    std::vector<std::string> bio =
        encode_tags(gen::random_spans(rng, len), len, Scheme::BIO);
    std::vector<std::string> up = convert_tags(bio, Scheme::BIO, Scheme::BIOES,
                                               RepairPolicy::Strict);
    if (convert_tags(up, Scheme::BIOES, Scheme::BIO, RepairPolicy::Strict) != bio) {
      return "BIO->BIOES->BIO not identity (trial " + std::to_string(trial) + ")";
    }
  }
  for (int trial = 0; trial < kSpanSets; ++trial) {
    std::size_t len = 1 + rng.below(40);
    std::vector<EntitySpan> spans = gen::random_spans(rng, len);
    for (Scheme scheme : {Scheme::BIO, Scheme::BIOES}) {
      std::vector<std::string> tags = encode_tags(spans, len, scheme);
      std::vector<std::string> io =
          convert_tags(tags, scheme, Scheme::IO, RepairPolicy::Strict);
      std::vector<std::string> back =
          convert_tags(io, Scheme::IO, scheme, RepairPolicy::Strict);
      if (decode_spans(back, scheme, RepairPolicy::Strict) !=
          oracles::merge_adjacent(spans)) {
        return "X->IO->X did not merge adjacent same-label spans (" + to_string(scheme) +
               ", trial " + std::to_string(trial) + ")";
      }
    }
  }
  if (sw.seconds() >= kBudgetSchemesSec) {
    return "round-trips took " + fmt(sw.seconds()) + "s (budget " +
           fmt(kBudgetSchemesSec) + "s)";
  }
  return "";
}

// ---- criterion 2: repair output is strict-clean and idempotent ----------

std::string check_repair() {
  Stopwatch sw;
  gen::Rng rng(102);
  for (Scheme scheme : {Scheme::BIO, Scheme::IO, Scheme::BIOES}) {
    for (RepairPolicy policy : {RepairPolicy::Conll, RepairPolicy::Discard}) {
      for (int trial = 0; trial < kRepairSeqs; ++trial) {
        std::size_t len = 1 + rng.below(20);
        std::vector<std::string> raw = gen::random_raw_tags(rng, len, scheme);
        std::vector<std::string> fixed = repair_tags(raw, scheme, policy);
        try {
          decode_spans(fixed, scheme, RepairPolicy::Strict);
        } catch (const DecodeError& e) {
          return "repair output not strict-decodable (" + to_string(scheme) + "/" +
                 to_string(policy) + ", trial " + std::to_string(trial) + "): " + e.what();
        }
        if (repair_tags(fixed, scheme, policy) != fixed) {
          return "repair not idempotent (" + to_string(scheme) + "/" + to_string(policy) +
                 ", trial " + std::to_string(trial) + ")";
        }
      }
    }
  }
  if (sw.seconds() >= kBudgetRepairSec) {
    return "repair took " + fmt(sw.seconds()) + "s (budget " + fmt(kBudgetRepairSec) + "s)";
  }
  return "";
}

// ---- criterion 3: scorer vs brute-force oracle + paper arithmetic -------

std::string check_scorer() {
  gen::Rng rng(103);
  for (int trial = 0; trial < kScorerPairs; ++trial) {
    Scheme scheme = trial % 2 == 0 ? Scheme::BIO : Scheme::BIOES;
    std::vector<Sentence> gold_s, pred_s;
    std::vector<std::vector<EntitySpan>> gold_spans, pred_spans;
    std::size_t n = 1 + rng.below(6);
    for (std::size_t si = 0; si < n; ++si) {
      std::size_t len = 1 + rng.below(12);
      std::vector<std::string> surfaces = random_surfaces(rng, len);
      std::vector<std::string> g = gen::random_raw_tags(rng, len, scheme);
      std::vector<std::string> p = gen::random_raw_tags(rng, len, scheme);
      gold_spans.push_back(oracles::conlleval_spans(g));
      pred_spans.push_back(oracles::conlleval_spans(p));
      gold_s.push_back(sentence_of(surfaces, g));
      pred_s.push_back(sentence_of(surfaces, p));
    }
    ScoreReport got = score(make_corpus(gold_s, scheme), make_corpus(pred_s, scheme),
                            RepairPolicy::Conll);
    std::map<std::string, oracles::LabelCounts> want =
        oracles::count_spans(gold_spans, pred_spans);
    if (got.per_label.size() != want.size()) {
      return "label row count mismatch (trial " + std::to_string(trial) + ")";
    }
    std::size_t row = 0;
    for (const auto& [label, c] : want) {
      const LabelScore& ls = got.per_label[row++];
      if (ls.label != label || ls.gold != c.gold || ls.predicted != c.predicted ||
          ls.correct != c.correct) {
        return "per-label counts disagree with the oracle on \"" + label + "\" (trial " +
               std::to_string(trial) + ")";
      }
    }
  }
  if (std::abs(f_measure(82.09, 73.43) - 77.52) > kAnchorTol) {
    return "f_measure(82.09, 73.43) = " + fmt(f_measure(82.09, 73.43)) +
           ", expected 77.52 +/- " + fmt(kAnchorTol);
  }
  if (std::abs(f_measure(76.75, 76.45) - 76.60) > kAnchorTol) {
    return "f_measure(76.75, 76.45) = " + fmt(f_measure(76.75, 76.45)) +
           ", expected 76.60 +/- " + fmt(kAnchorTol);
  }
  // Published rows print P to two decimals, so the inversion uses the same
  // precision; implied gold counts are whole entities.
  auto implied_gold = [](double predicted, double correct, double f1) {
    double p = round_half_up2(100.0 * correct / predicted);
    double r = f1 * p / (2.0 * p - f1);
    return std::llround(100.0 * correct / r);
  };
  long long g1 = implied_gold(13423, 9961, 73.74);
  long long g2 = implied_gold(13283, 10007, 74.47);
  if (std::abs(g1 - g2) > kGoldInversionEntities) {
    return "gold inversion self-test: " + std::to_string(g1) + " vs " + std::to_string(g2) +
           " differ by more than " + std::to_string(kGoldInversionEntities) + " entity";
  }
  return "";
}

// ---- criterion 4: augmentation invariants --------------------------------

Sentence random_valid_sentence(gen::Rng& rng, Scheme scheme, std::size_t len) {
  std::vector<std::string> tags =
      encode_tags(gen::random_spans(rng, len), len, scheme);
  return sentence_of(random_surfaces(rng, len), tags);
}

std::string check_augmentation() {
  SynonymLexicon lex;
  lex.add("pain", "discomfort");
  lex.add("pain", "sharp ache");
  lex.add("chest", "thorax");
  lex.add("aspirin", "baby aspirin");
  lex.add("scan", "ct scan");
  lex.add("denied", "did not report");

  gen::Rng rng(104);
  for (int trial = 0; trial < kAugSentences; ++trial) {
    Scheme scheme = trial % 2 == 0 ? Scheme::BIO : Scheme::BIOES;
    std::size_t len = 1 + rng.below(12);
    Sentence original = random_valid_sentence(rng, scheme, len);
    Corpus self = make_corpus({original}, scheme);
    LabelTokenDistribution dist = build_label_token_distribution(self);

    RandomStream r1 = RandomStream::derive(9901, {1, static_cast<std::uint64_t>(trial)});
    Sentence after_lwtr = lwtr(original, dist, 0.5, r1);
    if (after_lwtr.tags() != original.tags()) {
      return "lwtr changed the tag sequence (trial " + std::to_string(trial) + ")";
    }

    RandomStream r2 = RandomStream::derive(9902, {2, static_cast<std::uint64_t>(trial)});
    Sentence after_sis = shuffle_within_segments(original, 0.5, scheme, r2);
    if (after_sis.tags() != original.tags()) {
      return "sis changed the tag sequence (trial " + std::to_string(trial) + ")";
    }

    RandomStream r3 = RandomStream::derive(9903, {3, static_cast<std::uint64_t>(trial)});
    Sentence after_sr = synonym_replace(original, lex, 0.5, r3);
    std::vector<EntitySpan> before =
        decode_spans(original.tags(), scheme, RepairPolicy::Strict);
    std::vector<EntitySpan> after =
        decode_spans(after_sr.tags(), scheme, RepairPolicy::Strict);
    if (before.size() != after.size()) {
      return "sr changed the span count (trial " + std::to_string(trial) + ")";
    }
    std::multiset<std::string> la, lb;
    for (const EntitySpan& s : before) la.insert(s.label);
    for (const EntitySpan& s : after) lb.insert(s.label);
    if (la != lb) return "sr changed span labels (trial " + std::to_string(trial) + ")";

    if (trial < 200) {
      RandomStream z1 = RandomStream::derive(9904, {static_cast<std::uint64_t>(trial)});
      RandomStream z2 = RandomStream::derive(9905, {static_cast<std::uint64_t>(trial)});
      RandomStream z3 = RandomStream::derive(9906, {static_cast<std::uint64_t>(trial)});
      if (lwtr(original, dist, 0.0, z1) != original ||
          synonym_replace(original, lex, 0.0, z2) != original ||
          shuffle_within_segments(original, 0.0, scheme, z3) != original) {
        return "p=0 is not the identity (trial " + std::to_string(trial) + ")";
      }
    }
  }

  // Replacement counts: Bernoulli per token, so the count over an all-O
  // corpus must sit in the exact Binomial 99.9% interval.
  LabelTokenDistribution o_dist;
  o_dist.add("O", "alpha");
  o_dist.add("O", "beta");
  std::vector<std::string> o_tags(kLwtrTokens, "O");
  std::vector<std::string> o_surfaces(kLwtrTokens, "orig");
  Sentence o_sentence = sentence_of(o_surfaces, o_tags);
  int which = 0;
  for (double p : {0.1, 0.3, 0.7}) {
    RandomStream r = RandomStream::derive(9907, {static_cast<std::uint64_t>(which++)});
    Sentence replaced = lwtr(o_sentence, o_dist, p, r);
    std::uint64_t changed = 0;
    for (const Token& t : replaced.tokens) changed += t.surface != "orig";
    auto [lo, hi] = oracles::binom_999_interval(kLwtrTokens, p);
    if (changed < lo || changed > hi) {
      return "lwtr replacement count " + std::to_string(changed) + " outside [" +
             std::to_string(lo) + ", " + std::to_string(hi) + "] for p=" + fmt(p);
    }
  }

  // A three-token entity is one segment; its six permutations must come up
  // uniformly.
  Sentence seg = sentence_of({"a", "b", "c"}, {"B-problem", "I-problem", "I-problem"});
  std::map<std::string, int> freq;
  for (int trial = 0; trial < kSisTrials; ++trial) {
    RandomStream r = RandomStream::derive(9908, {static_cast<std::uint64_t>(trial)});
    Sentence shuffled = shuffle_within_segments(seg, 1.0, Scheme::BIO, r);
    freq[join(shuffled.surfaces(), "")] += 1;
  }
  if (freq.size() != 6) {
    return "expected 6 distinct permutations, saw " + std::to_string(freq.size());
  }
  for (const auto& [perm, count] : freq) {
    double rate = static_cast<double>(count) / kSisTrials;
    if (std::abs(rate - 1.0 / 6.0) > kSisUniformTol) {
      return "permutation " + perm + " rate " + fmt(rate) + " deviates from 1/6 by > " +
             fmt(kSisUniformTol);
    }
  }
  return "";
}

// ---- criterion 5: growth on the bundled corpus ---------------------------

std::string check_corpus_growth() {
  Corpus train = read_conll_file(data_path("train.conll"));
  SynonymLexicon lex = read_synonym_lexicon_file(data_path("synonyms.tsv"));
  if (lex.phrase_count() < 500) {
    return "bundled lexicon has " + std::to_string(lex.phrase_count()) +
           " entries, need >= 500";
  }
  LabelTokenDistribution dist = build_label_token_distribution(train);
  AugmentConfig cfg;  // all three techniques, copies 1
  cfg.p = 0.3;
  cfg.seed = 1;
  Corpus grown = augment_corpus(train, cfg, lex, dist);
  if (grown.sentences.size() != 4 * train.sentences.size()) {
    return "sentence count " + std::to_string(grown.sentences.size()) + ", expected exactly " +
           std::to_string(4 * train.sentences.size());
  }
  double ratio = static_cast<double>(grown.token_count()) /
                 static_cast<double>(train.token_count());
  if (ratio < kGrowthRatioLo || ratio > kGrowthRatioHi) {
    return "token ratio " + fmt(ratio) + " outside [" + fmt(kGrowthRatioLo) + ", " +
           fmt(kGrowthRatioHi) + "]";
  }
  return "";
}

// ---- criterion 6: consensus vs set-intersection oracle -------------------

std::string check_consensus() {
  gen::Rng rng(106);
  auto contains_all = [](const std::vector<EntitySpan>& sub,
                         const std::vector<EntitySpan>& super) {
    for (const EntitySpan& s : sub) {
      if (std::find(super.begin(), super.end(), s) == super.end()) return false;
    }
    return true;
  };
  for (int trial = 0; trial < kConsensusPairs; ++trial) {
    Scheme scheme = trial % 2 == 0 ? Scheme::BIO : Scheme::BIOES;
    std::size_t len = 1 + rng.below(12);
    std::vector<std::string> a = gen::random_raw_tags(rng, len, scheme);
    std::vector<std::string> b = gen::random_raw_tags(rng, len, scheme);
    std::vector<std::vector<std::string>> ab{a, b};
    std::vector<std::string> tags = consensus_tags(ab, len, scheme, RepairPolicy::Conll);
    std::vector<EntitySpan> got = decode_spans(tags, scheme, RepairPolicy::Strict);

    std::vector<EntitySpan> sa = oracles::conlleval_spans(a);
    std::vector<EntitySpan> sb = oracles::conlleval_spans(b);
    if (!contains_all(got, sa) || !contains_all(got, sb)) {
      return "consensus is not a subset of both inputs (trial " + std::to_string(trial) + ")";
    }
    if (got != oracles::intersect_spans(sa, sb)) {
      return "consensus disagrees with the intersection oracle (trial " +
             std::to_string(trial) + ")";
    }
    std::vector<std::vector<std::string>> ba{b, a};
    if (consensus_tags(ba, len, scheme, RepairPolicy::Conll) != tags) {
      return "consensus depends on prediction order (trial " + std::to_string(trial) + ")";
    }
    std::vector<std::vector<std::string>> abc{a, b,
                                              gen::random_raw_tags(rng, len, scheme)};
    std::vector<EntitySpan> with_third = decode_spans(
        consensus_tags(abc, len, scheme, RepairPolicy::Conll), scheme, RepairPolicy::Strict);
    if (with_third.size() > got.size() || !contains_all(with_third, got)) {
      return "a third model enlarged the consensus (trial " + std::to_string(trial) + ")";
    }
  }

  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng.below(8);
    std::vector<Sentence> pa, pb;
    for (std::size_t si = 0; si < n; ++si) {
      std::size_t len = 1 + rng.below(10);
      std::vector<std::string> surfaces = random_surfaces(rng, len);
      pa.push_back(sentence_of(surfaces, gen::random_raw_tags(rng, len, Scheme::BIO)));
      pb.push_back(sentence_of(surfaces, gen::random_raw_tags(rng, len, Scheme::BIO)));
    }
    ConsensusConfig cfg;
    cfg.scheme = Scheme::BIO;
    Corpus silver = build_silver_corpus(
        {make_corpus(pa, Scheme::BIO), make_corpus(pb, Scheme::BIO)}, cfg);
    for (const Sentence& s : silver.sentences) {
      if (decode_spans(s.tags(), Scheme::BIO, RepairPolicy::Strict).empty()) {
        return "drop_all_O kept a span-free sentence (trial " + std::to_string(trial) + ")";
      }
    }
  }
  return "";
}

// ---- criterion 7: rule learning vs exhaustive enumeration ----------------

struct OracleRule {
  std::string from, to;
  std::vector<RuleCondition> conditions;
  long long good = 0, bad = 0;

  long long score() const { return good - bad; }
  double acc() const { return static_cast<double>(good) / static_cast<double>(good + bad); }
};

// Independent single-rule sweep: apply (from,to,conds) to every sentence,
// counting fixes and breakages against gold. Mirrors the documented
// application semantics but shares no code with the library.
void oracle_sweep(const std::vector<std::vector<std::string>>& surfaces,
                  const std::vector<std::vector<std::string>>& current,
                  const std::vector<std::vector<std::string>>& gold, OracleRule& rule) {
  auto slot_offset = [](Slot s) {
    switch (s) {
      case Slot::TagM2: return -2;
      case Slot::TagM1: return -1;
      case Slot::TagP1: return 1;
      case Slot::TagP2: return 2;
      case Slot::WordM2: return -2;
      case Slot::WordM1: return -1;
      case Slot::Word0: return 0;
      case Slot::WordP1: return 1;
      case Slot::WordP2: return 2;
    }
    return 0;
  };
  auto is_tag_slot = [](Slot s) {
    return s == Slot::TagM2 || s == Slot::TagM1 || s == Slot::TagP1 || s == Slot::TagP2;
  };
  for (std::size_t si = 0; si < current.size(); ++si) {
    std::vector<std::string> work = current[si];
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i] != rule.from) continue;
      bool holds = true;
      for (const RuleCondition& c : rule.conditions) {
        long long j = static_cast<long long>(i) + slot_offset(c.slot);
        if (j < 0 || j >= static_cast<long long>(work.size())) {
          holds = false;
          break;
        }
        const std::string& observed =
            is_tag_slot(c.slot) ? work[static_cast<std::size_t>(j)]
                                : surfaces[si][static_cast<std::size_t>(j)];
        if (observed != c.value) {
          holds = false;
          break;
        }
      }
      if (!holds) continue;
      work[i] = rule.to;
      if (gold[si][i] == rule.to) ++rule.good;
      else if (gold[si][i] == rule.from) ++rule.bad;
    }
  }
}

// Enumerates every instantiable candidate at every error position, scores
// each with oracle_sweep, and picks the winner with the documented
// tie-break (score, then accuracy, then smallest serialized form).
OracleRule oracle_best_rule(const std::vector<std::vector<std::string>>& surfaces,
                            const std::vector<std::vector<std::string>>& current,
                            const std::vector<std::vector<std::string>>& gold,
                            double min_acc) {
  static const std::vector<std::vector<Slot>> kTemplates{
      {Slot::TagM1}, {Slot::TagP1}, {Slot::TagM2, Slot::TagM1}, {Slot::TagP1, Slot::TagP2},
      {Slot::Word0}, {Slot::WordM1}, {Slot::WordP1}, {Slot::Word0, Slot::TagM1},
      {Slot::Word0, Slot::TagP1}, {Slot::TagM1, Slot::TagP1}, {Slot::WordM1, Slot::Word0},
      {Slot::Word0, Slot::WordP1}};
  auto slot_offset = [](Slot s) {
    switch (s) {
      case Slot::TagM2: return -2;
      case Slot::TagM1: return -1;
      case Slot::TagP1: return 1;
      case Slot::TagP2: return 2;
      case Slot::WordM2: return -2;
      case Slot::WordM1: return -1;
      case Slot::Word0: return 0;
      case Slot::WordP1: return 1;
      case Slot::WordP2: return 2;
    }
    return 0;
  };
  auto is_tag_slot = [](Slot s) {
    return s == Slot::TagM2 || s == Slot::TagM1 || s == Slot::TagP1 || s == Slot::TagP2;
  };
  auto key_of = [](const OracleRule& r) {
    std::string k = "FROM " + r.from + " TO " + r.to + " IF ";
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
      if (i) k += " AND ";
      k += to_string(r.conditions[i].slot) + "=" + r.conditions[i].value;
    }
    return k;
  };

  std::map<std::string, OracleRule> candidates;
  for (std::size_t si = 0; si < current.size(); ++si) {
    for (std::size_t i = 0; i < current[si].size(); ++i) {
      if (current[si][i] == gold[si][i]) continue;
      for (const std::vector<Slot>& tmpl : kTemplates) {
        OracleRule rule;
        rule.from = current[si][i];
        rule.to = gold[si][i];
        bool ok = true;
        for (Slot s : tmpl) {
          long long j = static_cast<long long>(i) + slot_offset(s);
          if (j < 0 || j >= static_cast<long long>(current[si].size())) {
            ok = false;
            break;
          }
          rule.conditions.push_back(RuleCondition{
              s, is_tag_slot(s) ? current[si][static_cast<std::size_t>(j)]
                                : surfaces[si][static_cast<std::size_t>(j)]});
        }
        if (ok) candidates.emplace(key_of(rule), std::move(rule));
      }
    }
  }

  OracleRule best;
  std::string best_key;
  bool have = false;
  for (auto& [key, rule] : candidates) {
    oracle_sweep(surfaces, current, gold, rule);
    if (rule.good + rule.bad == 0 || rule.score() < 1 || rule.acc() < min_acc) continue;
    bool wins = !have || rule.score() > best.score() ||
                (rule.score() == best.score() &&
                 (rule.acc() > best.acc() ||
                  (rule.acc() == best.acc() && key < best_key)));
    if (wins) {
      best = rule;
      best_key = key;
      have = true;
    }
  }
  if (!have) throw InputError("oracle found no candidate");
  return best;
}

struct RandomLearnSet {
  std::vector<std::vector<std::string>> surfaces;
  Corpus initial;
  Corpus gold;

  RandomLearnSet(std::uint64_t seed, std::size_t n_sentences) {
    gen::Rng rng(seed);
    std::vector<Sentence> init_s, gold_s;
    for (std::size_t si = 0; si < n_sentences; ++si) {
      std::size_t len = 1 + rng.below(10);
      std::vector<std::string> w = random_surfaces(rng, len);
      init_s.push_back(sentence_of(w, gen::random_raw_tags(rng, len, Scheme::BIO)));
      gold_s.push_back(sentence_of(w, gen::random_raw_tags(rng, len, Scheme::BIO)));
      surfaces.push_back(std::move(w));
    }
    initial = make_corpus(std::move(init_s), Scheme::BIO);
    gold = make_corpus(std::move(gold_s), Scheme::BIO);
  }

  long long errors(const std::vector<std::vector<std::string>>& state) const {
    long long n = 0;
    for (std::size_t si = 0; si < state.size(); ++si) {
      for (std::size_t i = 0; i < state[si].size(); ++i) {
        n += state[si][i] != gold.sentences[si].tokens[i].tag;
      }
    }
    return n;
  }
};

std::string check_brill_learning() {
  Stopwatch sw;

  // The systematic error: "pain" tagged O at 50 positions, gold S-problem.
  // Distinct neighbors keep the word[-1]/word[+1] candidates at count 1,
  // and three-token all-O fillers give every tag-context candidate —
  // including the tag[-1]/tag[+1] conjunction — real misfires.
  std::vector<Sentence> init_s, gold_s;
  for (std::size_t i = 0; i < kPainPositions; ++i) {
    std::string lead = "lead" + std::to_string(i);
    std::string tail = "tail" + std::to_string(i);
    init_s.push_back(sentence_of({lead, "pain", tail}, {"O", "O", "O"}));
    gold_s.push_back(sentence_of({lead, "pain", tail}, {"O", "S-problem", "O"}));
  }
  for (int i = 0; i < 5; ++i) {
    std::vector<std::string> w{"calm" + std::to_string(i), "rest" + std::to_string(i),
                               "quiet" + std::to_string(i)};
    init_s.push_back(sentence_of(w, {"O", "O", "O"}));
    gold_s.push_back(sentence_of(w, {"O", "O", "O"}));
  }
  Corpus initial = make_corpus(init_s, Scheme::BIOES);
  Corpus gold = make_corpus(gold_s, Scheme::BIOES);

  BrillConfig cfg;
  cfg.min_score = 1;
  std::vector<BrillRule> pain_rules = learn_rules(initial, gold, cfg);
  if (pain_rules.empty()) return "no rule learned on the pain corpus";
  const BrillRule& first = pain_rules.front();
  BrillRule expected;
  expected.from_tag = "O";
  expected.to_tag = "S-problem";
  expected.conditions = {RuleCondition{Slot::Word0, "pain"}};
  expected.score = static_cast<long long>(kPainPositions);
  expected.accuracy = 1.0;
  if (first != expected) {
    return "first pain rule is \"" + serialize_rule(first) + "\", expected \"" +
           serialize_rule(expected) + "\"";
  }

  std::vector<std::vector<std::string>> surfaces, current, golds;
  for (std::size_t si = 0; si < init_s.size(); ++si) {
    surfaces.push_back(init_s[si].surfaces());
    current.push_back(init_s[si].tags());
    golds.push_back(gold_s[si].tags());
  }
  OracleRule oracle = oracle_best_rule(surfaces, current, golds, cfg.min_acc);
  if (oracle.from != first.from_tag || oracle.to != first.to_tag ||
      oracle.conditions != first.conditions || oracle.score() != first.score ||
      oracle.acc() != first.accuracy) {
    return "exhaustive enumeration picked a different first rule (FROM " + oracle.from +
           " TO " + oracle.to + ", score " + std::to_string(oracle.score()) + ")";
  }

  // Accuracy floor on arbitrary corpora.
  for (std::uint64_t seed : {201ull, 202ull}) {
    RandomLearnSet set(seed, 40);
    BrillConfig floor_cfg;
    floor_cfg.min_score = 1;  // min_acc stays 0.99
    for (const BrillRule& r : learn_rules(set.initial, set.gold, floor_cfg)) {
      if (r.accuracy < 0.99) {
        return "rule with accuracy " + fmt(r.accuracy) + " adopted at min_acc 0.99";
      }
    }
  }

  // Each rule's application lowers learning-set errors by exactly its score.
  {
    RandomLearnSet set(203, 40);
    BrillConfig open_cfg;
    open_cfg.min_acc = 0.0;
    open_cfg.min_score = 1;
    open_cfg.max_rules = 50;
    std::vector<BrillRule> rules = learn_rules(set.initial, set.gold, open_cfg);
    if (rules.size() < 5) return "random corpus yielded too few rules to test the deltas";
    std::vector<std::vector<std::string>> state;
    for (const Sentence& s : set.initial.sentences) state.push_back(s.tags());
    long long before = set.errors(state);
    for (const BrillRule& r : rules) {
      for (std::size_t si = 0; si < state.size(); ++si) {
        state[si] = apply_rules(set.surfaces[si], std::move(state[si]),
                                std::span<const BrillRule>(&r, 1));
      }
      long long after = set.errors(state);
      if (before - after != r.score) {
        return "errors fell by " + std::to_string(before - after) + " but the rule scored " +
               std::to_string(r.score);
      }
      before = after;
    }
  }

  // Threshold truncation.
  {
    RandomLearnSet set(204, 40);
    BrillConfig open_cfg;
    open_cfg.min_acc = 0.0;
    open_cfg.min_score = 1;
    open_cfg.max_rules = 50;
    std::vector<BrillRule> full = learn_rules(set.initial, set.gold, open_cfg);
    for (long long s : {2LL, 3LL, 5LL}) {
      std::size_t cut = full.size();
      for (std::size_t i = 0; i < full.size(); ++i) {
        if (full[i].score < s) {
          cut = i;
          break;
        }
      }
      BrillConfig at_s = open_cfg;
      at_s.min_score = s;
      if (learn_rules(set.initial, set.gold, at_s) !=
          std::vector<BrillRule>(full.begin(), full.begin() + cut)) {
        return "min_score " + std::to_string(s) + " list is not the truncated min_score-1 list";
      }
    }
  }

  if (sw.seconds() >= kBudgetBrillSec) {
    return "rule learning took " + fmt(sw.seconds()) + "s (budget " + fmt(kBudgetBrillSec) +
           "s)";
  }
  return "";
}

// ---- criterion 8: application semantics and rule-file round-trip ---------

std::string check_brill_application() {
  auto rule_of = [](std::string from, std::string to, Slot slot, std::string value) {
    BrillRule r;
    r.from_tag = std::move(from);
    r.to_tag = std::move(to);
    r.conditions = {RuleCondition{slot, std::move(value)}};
    return r;
  };

  // One left-to-right sweep cascades: each rewrite is visible to the next
  // position. A rule keyed on the tag it writes extends a run by itself;
  // the [B,O,O] example takes its documented two-rule realization, since
  // after the first rewrite the left context is I-problem, not B-problem.
  std::vector<std::string> surfaces{"s0", "s1", "s2", "s3"};
  std::vector<BrillRule> self_feeding{rule_of("O", "I-problem", Slot::TagM1, "I-problem")};
  std::vector<std::string> run = apply_rules(
      surfaces, {"I-problem", "O", "O", "O"}, self_feeding);
  if (run != std::vector<std::string>{"I-problem", "I-problem", "I-problem", "I-problem"}) {
    return "single prev-tag rule failed to cascade through the sentence";
  }

  std::vector<BrillRule> pair_rules{rule_of("O", "I-problem", Slot::TagM1, "B-problem"),
                                    rule_of("O", "I-problem", Slot::TagM1, "I-problem")};
  std::vector<std::string> three{"t0", "t1", "t2"};
  std::vector<std::string> extended =
      apply_rules(three, {"B-problem", "O", "O"}, pair_rules);
  if (extended != std::vector<std::string>{"B-problem", "I-problem", "I-problem"}) {
    return "[B-problem,O,O] did not extend to [B-problem,I-problem,I-problem]";
  }

  // Rule files preserve behavior bit for bit on a large probe.
  RandomLearnSet set(205, 40);
  BrillConfig cfg;
  cfg.min_acc = 0.0;
  cfg.min_score = 1;
  cfg.max_rules = 40;
  std::vector<BrillRule> learned = learn_rules(set.initial, set.gold, cfg);
  if (learned.empty()) return "no rules learned for the round-trip probe";

  fs::path dir = scratch_dir("rules");
  fs::path file = dir / "rules.txt";
  write_rules_file(learned, file.string());
  std::vector<BrillRule> parsed = parse_rules_file(file.string());
  std::error_code ec;
  fs::remove_all(dir, ec);

  gen::Rng rng(108);
  std::vector<Sentence> probe_s;
  for (std::size_t si = 0; si < kProbeSentences; ++si) {
    std::size_t len = 1 + rng.below(12);
    probe_s.push_back(
        sentence_of(random_surfaces(rng, len), gen::random_raw_tags(rng, len, Scheme::BIO)));
  }
  Corpus probe = make_corpus(std::move(probe_s), Scheme::BIO);
  if (apply_rules(probe, learned) != apply_rules(probe, parsed)) {
    return "parsed rules behave differently from the learned originals";
  }
  return "";
}

// ---- criterion 9: baseline taggers ---------------------------------------

const std::map<std::string, std::string>& surface_function() {
  static const std::map<std::string, std::string> m{
      {"pain", "B-problem"},     {"ache", "I-problem"},  {"x-ray", "B-test"},
      {"panel", "I-test"},       {"aspirin", "B-treatment"}, {"drip", "I-treatment"},
      {"admission", "B-occurrence"}, {"the", "O"},       {"on", "O"},
      {"after", "O"},            {"denied", "O"},        {"mild", "O"}};
  return m;
}

Corpus surface_function_corpus(std::uint64_t seed, std::size_t n) {
  gen::Rng rng(seed);
  std::vector<std::string> words;
  for (const auto& [w, t] : surface_function()) words.push_back(w);
  std::vector<Sentence> out;
  for (std::size_t si = 0; si < n; ++si) {
    std::size_t len = 4 + rng.below(8);
    Sentence s;
    for (std::size_t i = 0; i < len; ++i) {
      const std::string& w = words[rng.below(words.size())];
      s.tokens.push_back(Token{w, surface_function().at(w)});
    }
    out.push_back(std::move(s));
  }
  return make_corpus(std::move(out), Scheme::BIO);
}

std::string check_taggers() {
  Corpus train = surface_function_corpus(301, 80);
  PerceptronModel perceptron = train_perceptron(train, 10, 42);
  for (const Sentence& s : train.sentences) {
    if (perceptron.tag(s.surfaces()) != s.tags()) {
      return "perceptron below 100% training accuracy after 10 epochs";
    }
  }

  std::vector<Sentence> tie{sentence_of({"x"}, {"B-test"}), sentence_of({"x"}, {"O"}),
                            sentence_of({"x"}, {"O"}), sentence_of({"x"}, {"B-test"})};
  UnigramModel tie_model = train_unigram(make_corpus(tie, Scheme::BIO));
  if (tie_model.tag(std::vector<std::string>{"x"}) != std::vector<std::string>{"B-test"}) {
    return "unigram tie did not resolve to the lexicographically smallest tag";
  }
  if (tie_model.tag(std::vector<std::string>{"unseen"}) != std::vector<std::string>{"O"}) {
    return "unigram OOV fallback is not O";
  }

  UnigramModel unigram = train_unigram(train);
  fs::path dir = scratch_dir("models");
  save_model_file(unigram, (dir / "u.txt").string());
  save_model_file(perceptron, (dir / "p.txt").string());
  AnyModel u2 = AnyModel::load_file((dir / "u.txt").string());
  AnyModel p2 = AnyModel::load_file((dir / "p.txt").string());
  std::error_code ec;

  Corpus probe = surface_function_corpus(302, 60);
  for (const Sentence& s : probe.sentences) {
    std::vector<std::string> surfaces = s.surfaces();
    surfaces.push_back("neverseen");  // OOV mixed into every probe sentence
    if (u2.tag(surfaces) != unigram.tag(surfaces)) {
      fs::remove_all(dir, ec);
      return "unigram save/load changed its predictions";
    }
    if (p2.tag(surfaces) != perceptron.tag(surfaces)) {
      fs::remove_all(dir, ec);
      return "perceptron save/load changed its predictions";
    }
  }
  fs::remove_all(dir, ec);
  return "";
}

// ---- criterion 10: the end-to-end ladder ----------------------------------

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string check_pipeline() {
  PipelineConfig cfg;
  cfg.train_path = data_path("train.conll");
  cfg.test_path = data_path("test.conll");
  cfg.raw_path = data_path("unlabeled.txt");
  cfg.lexicon_path = data_path("synonyms.tsv");
  cfg.seed = 1;

  fs::path dir_a = scratch_dir("pipe-a");
  fs::path dir_b = scratch_dir("pipe-b");
  std::error_code ec;
  auto cleanup = [&] {
    fs::remove_all(dir_a, ec);
    fs::remove_all(dir_b, ec);
  };

  cfg.out_dir = dir_a.string();
  std::ostringstream log_a;
  Stopwatch sw;
  PipelineReport report = run_pipeline(cfg, log_a);
  double elapsed = sw.seconds();
  if (elapsed >= kBudgetPipelineSec) {
    cleanup();
    return "pipeline took " + fmt(elapsed) + "s (budget " + fmt(kBudgetPipelineSec) + "s)";
  }

  if (report.stages.size() != 5) {
    cleanup();
    return "expected 5 stages, got " + std::to_string(report.stages.size());
  }
  for (std::size_t i = 0; i < 5; ++i) {
    if (report.stages[i].stage != "m" + std::to_string(i)) {
      cleanup();
      return "stage " + std::to_string(i) + " is named " + report.stages[i].stage;
    }
  }
  // Table-shaped summary: a header and one row per stage with scheme,
  // training size, and F1, like the experiment table it mirrors.
  std::istringstream summary(report.summary);
  std::string header;
  std::getline(summary, header);
  if (header.find("stage") == std::string::npos || header.find("f1") == std::string::npos ||
      header.find("scheme") == std::string::npos) {
    cleanup();
    return "summary header lacks the stage/scheme/f1 columns: " + header;
  }
  std::size_t rows = 0;
  for (std::string line; std::getline(summary, line);) rows += !line.empty();
  if (rows != 5) {
    cleanup();
    return "summary has " + std::to_string(rows) + " rows, expected 5";
  }

  cfg.out_dir = dir_b.string();
  std::ostringstream log_b;
  run_pipeline(cfg, log_b);
  std::set<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(dir_a)) names_a.insert(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(dir_b)) names_b.insert(e.path().filename().string());
  if (names_a != names_b) {
    cleanup();
    return "the two runs produced different artifact sets";
  }
  for (const std::string& name : names_a) {
    if (read_file(dir_a / name) != read_file(dir_b / name)) {
      cleanup();
      return "artifact " + name + " differs between identically seeded runs";
    }
  }

  // The corrected tagger may not fall behind its own input on the half the
  // threshold was tuned on; rebuild that comparison from the run's artifacts.
  Corpus train1 = read_conll_file((dir_a / "m1-train.conll").string());
  std::size_t half = train1.sentences.size() / 2;
  Corpus gold_eval = make_corpus(
      std::vector<Sentence>(train1.sentences.begin() + static_cast<std::ptrdiff_t>(half),
                            train1.sentences.end()),
      train1.scheme);
  AnyModel m3 = AnyModel::load_file((dir_a / "m3-model.txt").string());
  Corpus initial_eval = retag_corpus(m3, gold_eval);
  std::vector<BrillRule> rules = parse_rules_file((dir_a / "m4-rules.txt").string());
  Corpus corrected_eval = apply_rules(initial_eval, rules);
  double f1_m3 = score(gold_eval, initial_eval, cfg.policy).overall.f1();
  double f1_m4 = score(gold_eval, corrected_eval, cfg.policy).overall.f1();
  cleanup();
  if (f1_m4 < f1_m3) {
    return "tuning-half F1 fell from " + fmt(f1_m3) + " to " + fmt(f1_m4);
  }
  return "";
}

}  // namespace

int main() {
  std::printf("acceptance gate (tolerances pinned in tests/acceptance/acceptance.cpp)\n");
  int failures = 0;
  failures += run_criterion(1, "scheme encode/decode round-trips", check_scheme_round_trips);
  failures += run_criterion(2, "repair is strict-clean and idempotent", check_repair);
  failures += run_criterion(3, "scorer matches oracle + arithmetic anchors", check_scorer);
  failures += run_criterion(4, "augmentation invariants and distributions", check_augmentation);
  failures += run_criterion(5, "bundled corpus grows 4x with ratio in range", check_corpus_growth);
  failures += run_criterion(6, "consensus equals span-set intersection", check_consensus);
  failures += run_criterion(7, "rule learning matches exhaustive search", check_brill_learning);
  failures += run_criterion(8, "rule application cascades and round-trips", check_brill_application);
  failures += run_criterion(9, "baseline taggers behave as documented", check_taggers);
  failures += run_criterion(10, "five-stage ladder: deterministic, shaped, monotone",
                            check_pipeline);
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures;
}
