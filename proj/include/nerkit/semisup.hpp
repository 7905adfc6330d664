#pragma once

#include <span>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/schemes.hpp"

namespace nerkit {

struct ConsensusConfig {
  Scheme scheme = Scheme::BIO;
  RepairPolicy policy = RepairPolicy::Conll;
  bool drop_all_o = true;
};

// Each prediction is repaired and decoded; a span survives only when the
// identical (start, end, label) appears in every prediction. Survivors are
// re-encoded in the working scheme, everything else O.
std::vector<std::string> consensus_tags(std::span<const std::vector<std::string>> predictions,
                                        std::size_t length, Scheme scheme, RepairPolicy policy);

// Intersects n >= 2 aligned prediction corpora sentence by sentence.
// Sentences whose consensus has no spans are dropped when cfg.drop_all_o.
Corpus build_silver_corpus(const std::vector<Corpus>& predictions, const ConsensusConfig& cfg);

// Appends the silver sentences to the training corpus (schemes must match).
Corpus concatenate(const Corpus& base, const Corpus& extra);

}  // namespace nerkit
