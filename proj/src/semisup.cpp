// Consensus silver-corpus construction: keep exactly the entity spans
// every model agrees on.

#include "nerkit/semisup.hpp"

#include <algorithm>

#include "nerkit/errors.hpp"

namespace nerkit {

namespace {

std::vector<EntitySpan> intersect_sorted(std::vector<EntitySpan> a,
                                         const std::vector<EntitySpan>& b) {
  std::vector<EntitySpan> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<std::string> consensus_tags(std::span<const std::vector<std::string>> predictions,
                                        std::size_t length, Scheme scheme, RepairPolicy policy) {
  if (predictions.size() < 2) throw InputError("consensus requires at least two predictions");
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].size() != length) {
      throw InputError("prediction " + std::to_string(i) + " has " +
                       std::to_string(predictions[i].size()) + " tags, expected " +
                       std::to_string(length));
    }
  }
  std::vector<EntitySpan> agreed = decode_spans(predictions[0], scheme, policy);
  std::sort(agreed.begin(), agreed.end());
  for (std::size_t i = 1; i < predictions.size() && !agreed.empty(); ++i) {
    std::vector<EntitySpan> spans = decode_spans(predictions[i], scheme, policy);
    std::sort(spans.begin(), spans.end());
    agreed = intersect_sorted(std::move(agreed), spans);
  }
  return encode_tags(agreed, length, scheme);
}

Corpus build_silver_corpus(const std::vector<Corpus>& predictions, const ConsensusConfig& cfg) {
  if (predictions.size() < 2) throw InputError("consensus requires at least two predictions");
  const Corpus& first = predictions[0];
  for (std::size_t m = 1; m < predictions.size(); ++m) {
    if (predictions[m].sentences.size() != first.sentences.size()) {
      throw InputError("prediction corpora disagree on sentence count (" +
                       std::to_string(first.sentences.size()) + " vs " +
                       std::to_string(predictions[m].sentences.size()) + ")");
    }
  }

  std::vector<Sentence> kept;
  for (std::size_t si = 0; si < first.sentences.size(); ++si) {
    const Sentence& base = first.sentences[si];
    std::vector<EntitySpan> agreed;
    for (std::size_t m = 0; m < predictions.size(); ++m) {
      const Sentence& s = predictions[m].sentences[si];
      if (s.tokens.size() != base.tokens.size()) {
        throw InputError("sentence " + std::to_string(si) +
                         ": prediction corpora disagree on token count");
      }
      for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        if (s.tokens[i].surface != base.tokens[i].surface) {
          throw InputError("sentence " + std::to_string(si) + ", token " + std::to_string(i) +
                           ": prediction corpora disagree on the surface form");
        }
      }
      std::vector<EntitySpan> spans =
          decode_spans(s.tags(), predictions[m].scheme, cfg.policy);
      std::sort(spans.begin(), spans.end());
      agreed = (m == 0) ? std::move(spans) : intersect_sorted(std::move(agreed), spans);
      if (agreed.empty() && m > 0) break;
    }
    if (agreed.empty() && cfg.drop_all_o) continue;
    std::vector<std::string> tags = encode_tags(agreed, base.tokens.size(), cfg.scheme);
    Sentence s;
    s.tokens.reserve(base.tokens.size());
    for (std::size_t i = 0; i < base.tokens.size(); ++i) {
      s.tokens.push_back(Token{base.tokens[i].surface, std::move(tags[i])});
    }
    kept.push_back(std::move(s));
  }
  return make_corpus(std::move(kept), cfg.scheme);
}

Corpus concatenate(const Corpus& base, const Corpus& extra) {
  if (base.scheme != extra.scheme) {
    throw InputError("cannot concatenate corpora in different schemes (" + to_string(base.scheme) +
                     " vs " + to_string(extra.scheme) + ")");
  }
  Corpus out = base;
  out.sentences.reserve(base.sentences.size() + extra.sentences.size());
  for (const Sentence& s : extra.sentences) out.sentences.push_back(s);
  for (std::size_t d : extra.doc_starts) out.doc_starts.push_back(base.sentences.size() + d);
  out.label_set.insert(extra.label_set.begin(), extra.label_set.end());
  return out;
}

}  // namespace nerkit
