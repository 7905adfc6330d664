#pragma once

#include <span>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"

namespace nerkit {

// What to do with ill-formed tag sequences while decoding:
//   Strict  - throw DecodeError at the first ill-formed position.
//   Conll   - a stray continuation starts a new entity; an unclosed
//             entity is closed at its last token (conlleval convention).
//   Discard - ill-formed runs yield no span at all.
enum class RepairPolicy { Strict, Conll, Discard };

std::string to_string(RepairPolicy policy);
std::optional<RepairPolicy> parse_policy(std::string_view name);  // case-insensitive

// Tag sequence -> sorted, non-overlapping entity spans.
// Precondition: every tag is "O" or has a prefix legal for the scheme.
std::vector<EntitySpan> decode_spans(std::span<const std::string> tags,
                                     Scheme scheme, RepairPolicy policy);

// Spans -> tag sequence. Spans must be sorted, non-overlapping, and end
// within length; anything else is an InputError.
std::vector<std::string> encode_tags(std::span<const EntitySpan> spans,
                                     std::size_t length, Scheme scheme);

// encode_tags(decode_spans(tags, from, policy), length, to).
std::vector<std::string> convert_tags(std::span<const std::string> tags,
                                      Scheme from, Scheme to, RepairPolicy policy);

// convert within one scheme; the result always decodes strictly.
std::vector<std::string> repair_tags(std::span<const std::string> tags,
                                     Scheme scheme, RepairPolicy policy);

Corpus convert_corpus(const Corpus& corpus, Scheme to, RepairPolicy policy);

}  // namespace nerkit
