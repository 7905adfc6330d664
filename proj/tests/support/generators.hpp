// Deterministic random generators for property tests.  A plain xorshift
// keeps draws identical across standard libraries.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/schemes.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  bool chance(double p) { return static_cast<double>(next() >> 11) / 9007199254740992.0 < p; }

 private:
  std::uint64_t state_;
};

inline const std::vector<std::string>& labels6() {
  static const std::vector<std::string> ls = {"problem",    "test",      "treatment",
                                              "occurrence", "evidential", "clinical_dept"};
  return ls;
}

// Random set of non-overlapping spans over a sentence of the given length.
inline std::vector<nerkit::EntitySpan> random_spans(Rng& rng, std::size_t length,
                                                    std::size_t max_labels = 6) {
  std::vector<nerkit::EntitySpan> spans;
  std::size_t i = 0;
  while (i < length) {
    if (rng.chance(0.35)) {
      std::size_t len = 1 + rng.below(4);
      if (len > length - i) len = length - i;
      spans.push_back({i, i + len, labels6()[rng.below(max_labels)]});
      i += len;
    } else {
      ++i;
    }
  }
  return spans;
}

// Arbitrary tag sequence with prefixes legal for the scheme but no
// well-formedness guarantee at all.
inline std::vector<std::string> random_raw_tags(Rng& rng, std::size_t length,
                                                nerkit::Scheme scheme) {
  const char* prefixes = scheme == nerkit::Scheme::BIO   ? "BI"
                         : scheme == nerkit::Scheme::IO  ? "I"
                                                         : "BIES";
  std::size_t np = scheme == nerkit::Scheme::BIO ? 2 : scheme == nerkit::Scheme::IO ? 1 : 4;
  std::vector<std::string> tags;
  tags.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (rng.chance(0.4)) {
      tags.emplace_back("O");
    } else {
      tags.push_back(std::string(1, prefixes[rng.below(np)]) + "-" +
                     labels6()[rng.below(3)]);
    }
  }
  return tags;
}

inline const std::vector<std::string>& small_vocab() {
  static const std::vector<std::string> v = {"pain", "chest",  "fever", "aspirin", "scan",
                                             "the",  "denied", "on",    "admission", "."};
  return v;
}

// Sentence with surfaces from a small vocabulary and tags encoding a random
// span set in the given scheme.
inline nerkit::Sentence random_sentence(Rng& rng, nerkit::Scheme scheme,
                                        std::size_t min_len = 1, std::size_t max_len = 12) {
  std::size_t length = min_len + rng.below(max_len - min_len + 1);
  std::vector<std::string> tags =
      nerkit::encode_tags(random_spans(rng, length), length, scheme);
  nerkit::Sentence s;
  s.tokens.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    s.tokens.push_back(nerkit::Token{small_vocab()[rng.below(small_vocab().size())], tags[i]});
  }
  return s;
}

inline nerkit::Corpus random_corpus(Rng& rng, nerkit::Scheme scheme, std::size_t sentences,
                                    std::size_t min_len = 1, std::size_t max_len = 12) {
  std::vector<nerkit::Sentence> ss;
  ss.reserve(sentences);
  for (std::size_t i = 0; i < sentences; ++i) {
    ss.push_back(random_sentence(rng, scheme, min_len, max_len));
  }
  return nerkit::make_corpus(std::move(ss), scheme);
}

}  // namespace gen
