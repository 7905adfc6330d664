#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/random.hpp"

namespace nerkit {

// Multinomial over surface forms per full scheme tag (B-problem and
// I-problem are distinct keys), with observed counts as weights.
class LabelTokenDistribution {
 public:
  void add(const std::string& tag, const std::string& surface, std::uint64_t count = 1);

  bool has_tag(const std::string& tag) const;
  std::uint64_t count(const std::string& tag, const std::string& surface) const;
  std::uint64_t total(const std::string& tag) const;

  // Draw proportional to counts. Throws InputError when the tag is absent.
  const std::string& sample(const std::string& tag, RandomStream& rng) const;

 private:
  struct TagEntry {
    std::map<std::string, std::uint64_t> counts;  // surface -> count
    std::vector<std::pair<std::string, std::uint64_t>> cumulative;  // lazily built
    std::uint64_t total = 0;
    bool dirty = true;
  };
  mutable std::map<std::string, TagEntry> tags_;
};

LabelTokenDistribution build_label_token_distribution(const Corpus& corpus);

// Lowercased single-token headword -> ordered synonym phrases.
class SynonymLexicon {
 public:
  // Adds one (headword, phrase) pair; duplicates collapse. The headword is
  // lowercased on insertion; the phrase is split on whitespace.
  void add(const std::string& headword, const std::string& phrase);

  // nullptr when the lowercased surface has no entry.
  const std::vector<std::vector<std::string>>* lookup(const std::string& surface) const;

  // Distinct headwords.
  std::size_t size() const { return entries_.size(); }

  // Total (headword, phrase) pairs.
  std::size_t phrase_count() const;

  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, std::vector<std::vector<std::string>>> entries_;
};

// File format: one "headword<TAB>synonym phrase" per line, '#' comments
// and blank lines ignored.
SynonymLexicon read_synonym_lexicon(std::istream& in);
SynonymLexicon read_synonym_lexicon_file(const std::string& path);

enum class Technique { LWTR = 1, SR = 2, SIS = 3 };

std::string to_string(Technique technique);
std::optional<Technique> parse_technique(std::string_view name);  // case-insensitive
// Comma-separated list, e.g. "lwtr,sr,sis". Duplicates rejected.
std::vector<Technique> parse_technique_list(std::string_view list);

struct AugmentConfig {
  std::vector<Technique> techniques{Technique::LWTR, Technique::SR, Technique::SIS};
  double p = 0.3;
  std::uint32_t copies_per_technique = 1;
  std::uint64_t seed = 0;
};

// Per-token Bernoulli(p): on success the surface is redrawn from the
// distribution conditioned on the token's full tag (the original surface
// may be redrawn). Tags and length never change.
Sentence lwtr(const Sentence& sentence, const LabelTokenDistribution& dist, double p,
              RandomStream& rng);

// Per-token Bernoulli(p): on success and a lexicon hit (lowercase-exact,
// single-token headword), the token becomes a uniformly drawn synonym
// phrase. Multi-token phrases expand tags: B-X heads stay B-X with I-X
// continuations; I-X yields all I-X; E-X yields I-X ending in E-X; S-X
// becomes B-X..E-X (or stays S-X for one-token phrases); O stays O.
Sentence synonym_replace(const Sentence& sentence, const SynonymLexicon& lex, double p,
                         RandomStream& rng);

// Segments are decoded entity spans plus maximal O runs. Per segment
// Bernoulli(p); on success the segment's surfaces are uniformly permuted.
// The tag sequence is returned byte-identical.
Sentence shuffle_within_segments(const Sentence& sentence, double p, Scheme scheme,
                                 RandomStream& rng);

// Original sentences first, then technique-major / copy / sentence-ordered
// transformed copies. Each sentence's stream is derived from (seed,
// kStreamAugment, technique id, copy, ordinal), so output is independent
// of processing order.
Corpus augment_corpus(const Corpus& corpus, const AugmentConfig& cfg,
                      const SynonymLexicon& lex, const LabelTokenDistribution& dist);

}  // namespace nerkit
