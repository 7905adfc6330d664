#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"

namespace nerkit {

// Context slot a rule condition may test. Offsets are relative to the
// position being rewritten; tag slots read the CURRENT (possibly already
// rewritten) tags, word slots read surfaces.
enum class Slot {
  TagM2, TagM1, TagP1, TagP2,          // tag[-2] tag[-1] tag[+1] tag[+2]
  WordM2, WordM1, Word0, WordP1, WordP2  // word[-2] .. word[+2]
};

std::string to_string(Slot slot);
std::optional<Slot> parse_slot(std::string_view name);

struct RuleCondition {
  Slot slot;
  std::string value;

  bool operator==(const RuleCondition&) const = default;
};

// One transformation: rewrite from_tag to to_tag wherever every condition
// holds. Conditions referencing positions outside the sentence never hold.
struct BrillRule {
  std::string from_tag;
  std::string to_tag;
  std::vector<RuleCondition> conditions;  // 1 or 2, template order
  long long score = 0;     // good - bad on the learning set
  double accuracy = 0.0;   // good / (good + bad)

  bool operator==(const BrillRule&) const = default;
};

// The fixed inventory: {tag[-1]} {tag[+1]} {tag[-2],tag[-1]}
// {tag[+1],tag[+2]} {word[0]} {word[-1]} {word[+1]} {word[0],tag[-1]}
// {word[0],tag[+1]} {tag[-1],tag[+1]} {word[-1],word[0]} {word[0],word[+1]}
const std::vector<std::vector<Slot>>& rule_templates();

struct BrillConfig {
  double min_acc = 0.99;
  long long min_score = 5;
  std::size_t max_rules = 250;
};

// Greedy transformation-based learning: repeatedly pick the candidate rule
// with the highest sweep-simulated score (ties: higher accuracy, then
// smallest serialized form), stop when the best score drops below
// min_score. Candidates with accuracy < min_acc are never picked. initial
// and gold must be token-aligned.
std::vector<BrillRule> learn_rules(const Corpus& initial, const Corpus& gold,
                                   const BrillConfig& cfg);

// Applies rules in order; each rule makes one left-to-right in-place sweep,
// so a rewrite at position i is visible to conditions at positions > i
// within the same sweep.
std::vector<std::string> apply_rules(std::span<const std::string> surfaces,
                                     std::vector<std::string> tags,
                                     std::span<const BrillRule> rules);
Corpus apply_rules(const Corpus& tagged, std::span<const BrillRule> rules);

struct TuneCandidate {
  long long min_score = 0;
  double f1 = 0.0;  // entity F1 on the evaluation half, scored in BIO
  std::size_t rule_count = 0;
};

struct TuneResult {
  long long best_min_score = 0;
  std::vector<BrillRule> rules;  // the winning truncation
  std::vector<TuneCandidate> candidates;
};

// Learns once at the smallest candidate threshold, then evaluates each
// candidate as a truncation of that rule list (the greedy sequence does
// not depend on min_score, only the stopping point does). Ties go to the
// larger min_score.
TuneResult tune_min_score(const Corpus& gold_learn, const Corpus& initial_learn,
                          const Corpus& gold_eval, const Corpus& initial_eval,
                          std::span<const long long> candidate_scores,
                          const BrillConfig& base_cfg);

// One rule per line:
//   FROM <tag> TO <tag> IF <slot>=<value> [AND <slot>=<value>] ; score=<int> acc=<decimal>
// Values with spaces, quotes, or '#' are double-quoted with backslash escapes.
std::string serialize_rule(const BrillRule& rule);
std::string serialize_rules(std::span<const BrillRule> rules);
std::vector<BrillRule> parse_rules(std::istream& in);
std::vector<BrillRule> parse_rules_file(const std::string& path);
void write_rules_file(std::span<const BrillRule> rules, const std::string& path);

}  // namespace nerkit
