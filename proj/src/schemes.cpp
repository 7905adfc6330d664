// Tag-sequence <-> entity-span codec for BIO, IO, and BIOES, with repair
// of ill-formed sequences.

#include "nerkit/schemes.hpp"

#include "nerkit/errors.hpp"

namespace nerkit {

std::string to_string(RepairPolicy policy) {
  switch (policy) {
    case RepairPolicy::Strict: return "strict";
    case RepairPolicy::Conll: return "conll";
    case RepairPolicy::Discard: return "discard";
  }
  return "?";
}

std::optional<RepairPolicy> parse_policy(std::string_view name) {
  std::string low;
  for (char c : name) low += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  if (low == "strict") return RepairPolicy::Strict;
  if (low == "conll") return RepairPolicy::Conll;
  if (low == "discard") return RepairPolicy::Discard;
  return std::nullopt;
}

namespace {

[[noreturn]] void ill_formed(std::size_t index, const std::string& tag, const std::string& why) {
  throw DecodeError(index, tag, "ill-formed tag sequence at index " + std::to_string(index) +
                                    " (tag \"" + tag + "\"): " + why);
}

TagParts parts_or_throw(std::span<const std::string> tags, std::size_t i, Scheme scheme) {
  const std::string& tag = tags[i];
  auto parts = split_tag(tag);
  if (!parts) ill_formed(i, tag, "malformed tag");
  if (!prefix_legal(parts->prefix, scheme)) {
    ill_formed(i, tag, "prefix illegal for scheme " + to_string(scheme));
  }
  return *parts;
}

std::vector<EntitySpan> decode_bio(std::span<const std::string> tags, RepairPolicy policy) {
  std::vector<EntitySpan> spans;
  bool open = false;
  bool discarding = false;
  std::size_t start = 0;
  std::string label;

  auto close = [&](std::size_t end) {
    if (open) spans.push_back(EntitySpan{start, end, label});
    open = false;
  };

  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (is_outside(tags[i])) {
      close(i);
      discarding = false;
      continue;
    }
    TagParts p = parts_or_throw(tags, i, Scheme::BIO);
    std::string tag_label(p.label);
    if (p.prefix == 'B') {
      close(i);
      discarding = false;
      open = true;
      start = i;
      label = std::move(tag_label);
      continue;
    }
    // I-tag
    if (open && label == tag_label) continue;
    if (discarding && label == tag_label) continue;
    // Stray continuation: no open entity of this label.
    switch (policy) {
      case RepairPolicy::Strict:
        ill_formed(i, tags[i], "continuation without a matching B tag");
      case RepairPolicy::Conll:
        close(i);
        discarding = false;
        open = true;
        start = i;
        label = std::move(tag_label);
        break;
      case RepairPolicy::Discard:
        close(i);
        open = false;
        discarding = true;
        label = std::move(tag_label);
        break;
    }
  }
  close(tags.size());
  return spans;
}

std::vector<EntitySpan> decode_io(std::span<const std::string> tags) {
  std::vector<EntitySpan> spans;
  bool open = false;
  std::size_t start = 0;
  std::string label;

  auto close = [&](std::size_t end) {
    if (open) spans.push_back(EntitySpan{start, end, label});
    open = false;
  };

  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (is_outside(tags[i])) {
      close(i);
      continue;
    }
    TagParts p = parts_or_throw(tags, i, Scheme::IO);
    std::string tag_label(p.label);
    if (open && label == tag_label) continue;
    close(i);
    open = true;
    start = i;
    label = std::move(tag_label);
  }
  close(tags.size());
  return spans;
}

std::vector<EntitySpan> decode_bioes(std::span<const std::string> tags, RepairPolicy policy) {
  std::vector<EntitySpan> spans;
  enum class State { None, Open, Discarding };
  State state = State::None;
  std::size_t start = 0;
  std::string label;

  auto emit = [&](std::size_t s, std::size_t e, std::string l) {
    spans.push_back(EntitySpan{s, e, std::move(l)});
  };

  for (std::size_t i = 0; i < tags.size(); ++i) {
    const bool outside = is_outside(tags[i]);
    TagParts p{};
    std::string tag_label;
    if (!outside) {
      p = parts_or_throw(tags, i, Scheme::BIOES);
      tag_label = std::string(p.label);
    }

  redispatch:
    switch (state) {
      case State::Open: {
        if (!outside && tag_label == label && p.prefix == 'I') {
          break;  // extend
        }
        if (!outside && tag_label == label && p.prefix == 'E') {
          emit(start, i + 1, label);
          state = State::None;
          break;
        }
        // Anything else breaks the open entity.
        if (policy == RepairPolicy::Strict) {
          ill_formed(i, tags[i], "entity opened at index " + std::to_string(start) +
                                     " not closed by an E tag");
        }
        if (policy == RepairPolicy::Conll) emit(start, i, label);
        state = State::None;
        goto redispatch;
      }
      case State::Discarding: {
        if (!outside && tag_label == label && p.prefix == 'I') break;
        if (!outside && tag_label == label && p.prefix == 'E') {
          state = State::None;
          break;
        }
        state = State::None;
        goto redispatch;
      }
      case State::None: {
        if (outside) break;
        if (p.prefix == 'S') {
          emit(i, i + 1, tag_label);
          break;
        }
        if (p.prefix == 'B') {
          state = State::Open;
          start = i;
          label = tag_label;
          break;
        }
        // Stray I or E.
        switch (policy) {
          case RepairPolicy::Strict:
            ill_formed(i, tags[i], "continuation without a matching B tag");
          case RepairPolicy::Conll:
            if (p.prefix == 'E') {
              emit(i, i + 1, tag_label);
            } else {
              state = State::Open;
              start = i;
              label = tag_label;
            }
            break;
          case RepairPolicy::Discard:
            if (p.prefix == 'I') {
              state = State::Discarding;
              label = tag_label;
            }
            break;
        }
        break;
      }
    }
  }

  if (state == State::Open) {
    switch (policy) {
      case RepairPolicy::Strict:
        ill_formed(tags.size() - 1, tags[tags.size() - 1],
                   "entity opened at index " + std::to_string(start) +
                       " still open at end of sentence");
      case RepairPolicy::Conll:
        emit(start, tags.size(), label);
        break;
      case RepairPolicy::Discard:
        break;
    }
  }
  return spans;
}

void check_spans(std::span<const EntitySpan> spans, std::size_t length) {
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const EntitySpan& s = spans[i];
    if (s.start >= s.end || s.end > length) {
      throw InputError("span " + std::to_string(i) + " [" + std::to_string(s.start) + "," +
                       std::to_string(s.end) + ") out of range for length " +
                       std::to_string(length));
    }
    if (s.start < prev_end) {
      throw InputError("span " + std::to_string(i) + " [" + std::to_string(s.start) + "," +
                       std::to_string(s.end) + ") overlaps or is out of order");
    }
    if (s.label.empty()) throw InputError("span " + std::to_string(i) + " has an empty label");
    prev_end = s.end;
  }
}

}  // namespace

std::vector<EntitySpan> decode_spans(std::span<const std::string> tags, Scheme scheme,
                                     RepairPolicy policy) {
  switch (scheme) {
    case Scheme::BIO: return decode_bio(tags, policy);
    case Scheme::IO: return decode_io(tags);
    case Scheme::BIOES: return decode_bioes(tags, policy);
  }
  return {};
}

std::vector<std::string> encode_tags(std::span<const EntitySpan> spans, std::size_t length,
                                     Scheme scheme) {
  check_spans(spans, length);
  std::vector<std::string> tags(length, "O");
  for (const EntitySpan& s : spans) {
    switch (scheme) {
      case Scheme::BIO:
        tags[s.start] = make_tag('B', s.label);
        for (std::size_t i = s.start + 1; i < s.end; ++i) tags[i] = make_tag('I', s.label);
        break;
      case Scheme::IO:
        for (std::size_t i = s.start; i < s.end; ++i) tags[i] = make_tag('I', s.label);
        break;
      case Scheme::BIOES:
        if (s.end - s.start == 1) {
          tags[s.start] = make_tag('S', s.label);
        } else {
          tags[s.start] = make_tag('B', s.label);
          for (std::size_t i = s.start + 1; i + 1 < s.end; ++i) tags[i] = make_tag('I', s.label);
          tags[s.end - 1] = make_tag('E', s.label);
        }
        break;
    }
  }
  return tags;
}

std::vector<std::string> convert_tags(std::span<const std::string> tags, Scheme from, Scheme to,
                                      RepairPolicy policy) {
  std::vector<EntitySpan> spans = decode_spans(tags, from, policy);
  return encode_tags(spans, tags.size(), to);
}

std::vector<std::string> repair_tags(std::span<const std::string> tags, Scheme scheme,
                                     RepairPolicy policy) {
  return convert_tags(tags, scheme, scheme, policy);
}

Corpus convert_corpus(const Corpus& corpus, Scheme to, RepairPolicy policy) {
  std::vector<Sentence> sentences;
  sentences.reserve(corpus.sentences.size());
  for (const Sentence& s : corpus.sentences) {
    std::vector<std::string> tags = convert_tags(s.tags(), corpus.scheme, to, policy);
    Sentence out;
    out.tokens.reserve(s.tokens.size());
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      out.tokens.push_back(Token{s.tokens[i].surface, std::move(tags[i])});
    }
    sentences.push_back(std::move(out));
  }
  Corpus result = make_corpus(std::move(sentences), to);
  result.doc_starts = corpus.doc_starts;
  return result;
}

}  // namespace nerkit
