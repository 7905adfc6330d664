// Data augmentation: label-wise token replacement, synonym replacement,
// and shuffle within segments.

#include "nerkit/augment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nerkit/errors.hpp"
#include "nerkit/schemes.hpp"
#include "nerkit/util.hpp"

namespace nerkit {

void LabelTokenDistribution::add(const std::string& tag, const std::string& surface,
                                 std::uint64_t count) {
  if (count == 0) return;
  TagEntry& entry = tags_[tag];
  entry.counts[surface] += count;
  entry.total += count;
  entry.dirty = true;
}

bool LabelTokenDistribution::has_tag(const std::string& tag) const {
  return tags_.contains(tag);
}

std::uint64_t LabelTokenDistribution::count(const std::string& tag,
                                            const std::string& surface) const {
  auto it = tags_.find(tag);
  if (it == tags_.end()) return 0;
  auto jt = it->second.counts.find(surface);
  return jt == it->second.counts.end() ? 0 : jt->second;
}

std::uint64_t LabelTokenDistribution::total(const std::string& tag) const {
  auto it = tags_.find(tag);
  return it == tags_.end() ? 0 : it->second.total;
}

const std::string& LabelTokenDistribution::sample(const std::string& tag,
                                                  RandomStream& rng) const {
  auto it = tags_.find(tag);
  if (it == tags_.end()) {
    throw InputError("tag \"" + tag + "\" absent from the label-token distribution");
  }
  TagEntry& entry = it->second;
  if (entry.dirty) {
    entry.cumulative.clear();
    entry.cumulative.reserve(entry.counts.size());
    std::uint64_t running = 0;
    for (const auto& [surface, n] : entry.counts) {
      running += n;
      entry.cumulative.emplace_back(surface, running);
    }
    entry.dirty = false;
  }
  std::uint64_t draw = rng.below(entry.total);
  auto jt = std::upper_bound(entry.cumulative.begin(), entry.cumulative.end(), draw,
                             [](std::uint64_t v, const auto& e) { return v < e.second; });
  return jt->first;
}

LabelTokenDistribution build_label_token_distribution(const Corpus& corpus) {
  LabelTokenDistribution dist;
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens) dist.add(t.tag, t.surface);
  }
  return dist;
}

void SynonymLexicon::add(const std::string& headword, const std::string& phrase) {
  std::string head = ascii_lower(std::string(trim(headword)));
  std::vector<std::string> tokens = split_ws(phrase);
  if (head.empty()) throw InputError("synonym lexicon: empty headword");
  if (split_ws(head).size() != 1) {
    throw InputError("synonym lexicon: headword \"" + head + "\" is not a single token");
  }
  if (tokens.empty()) {
    throw InputError("synonym lexicon: empty phrase for headword \"" + head + "\"");
  }
  auto& list = entries_[head];
  if (std::find(list.begin(), list.end(), tokens) == list.end()) {
    list.push_back(std::move(tokens));
  }
}

const std::vector<std::vector<std::string>>* SynonymLexicon::lookup(
    const std::string& surface) const {
  auto it = entries_.find(ascii_lower(surface));
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t SynonymLexicon::phrase_count() const {
  std::size_t n = 0;
  for (const auto& [headword, phrases] : entries_) n += phrases.size();
  return n;
}

SynonymLexicon read_synonym_lexicon(std::istream& in) {
  SynonymLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::size_t tab = view.find('\t');
    if (tab == std::string_view::npos) {
      throw InputError("synonym lexicon line " + std::to_string(line_no) +
                       ": expected headword<TAB>phrase");
    }
    try {
      lex.add(std::string(view.substr(0, tab)), std::string(view.substr(tab + 1)));
    } catch (const InputError& e) {
      throw InputError("synonym lexicon line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return lex;
}

SynonymLexicon read_synonym_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open synonym lexicon: " + path);
  return read_synonym_lexicon(in);
}

std::string to_string(Technique technique) {
  switch (technique) {
    case Technique::LWTR: return "lwtr";
    case Technique::SR: return "sr";
    case Technique::SIS: return "sis";
  }
  return "?";
}

std::optional<Technique> parse_technique(std::string_view name) {
  std::string low = ascii_lower(name);
  if (low == "lwtr") return Technique::LWTR;
  if (low == "sr") return Technique::SR;
  if (low == "sis") return Technique::SIS;
  return std::nullopt;
}

std::vector<Technique> parse_technique_list(std::string_view list) {
  std::vector<Technique> out;
  for (const std::string& part : split_char(list, ',')) {
    std::string_view name = trim(part);
    if (name.empty()) throw InputError("empty entry in technique list \"" + std::string(list) + "\"");
    std::optional<Technique> t = parse_technique(name);
    if (!t) throw InputError("unknown technique \"" + std::string(name) + "\" (expected lwtr, sr, sis)");
    if (std::find(out.begin(), out.end(), *t) != out.end()) {
      throw InputError("technique \"" + std::string(name) + "\" listed twice");
    }
    out.push_back(*t);
  }
  if (out.empty()) throw InputError("technique list is empty");
  return out;
}

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("replacement probability must be in [0,1], got " + std::to_string(p));
  }
}

}  // namespace

Sentence lwtr(const Sentence& sentence, const LabelTokenDistribution& dist, double p,
              RandomStream& rng) {
  check_probability(p);
  Sentence out = sentence;
  for (Token& t : out.tokens) {
    if (!rng.bernoulli(p)) continue;
    t.surface = dist.sample(t.tag, rng);
  }
  return out;
}

namespace {

// Tags for an L-token phrase standing in for one token tagged `tag`.
std::vector<std::string> expand_tag(const std::string& tag, std::size_t length) {
  std::vector<std::string> tags(length, tag);
  if (length <= 1 || is_outside(tag)) return tags;
  auto parts = split_tag(tag);
  if (!parts) throw InputError("malformed tag \"" + tag + "\"");
  std::string inner = make_tag('I', parts->label);
  switch (parts->prefix) {
    case 'B':
      for (std::size_t i = 1; i < length; ++i) tags[i] = inner;
      break;
    case 'I':
      break;  // all I already
    case 'E':
      for (std::size_t i = 0; i + 1 < length; ++i) tags[i] = inner;
      break;
    case 'S':
      tags[0] = make_tag('B', parts->label);
      for (std::size_t i = 1; i + 1 < length; ++i) tags[i] = inner;
      tags[length - 1] = make_tag('E', parts->label);
      break;
  }
  return tags;
}

}  // namespace

Sentence synonym_replace(const Sentence& sentence, const SynonymLexicon& lex, double p,
                         RandomStream& rng) {
  check_probability(p);
  Sentence out;
  out.tokens.reserve(sentence.tokens.size());
  for (const Token& t : sentence.tokens) {
    if (!rng.bernoulli(p)) {
      out.tokens.push_back(t);
      continue;
    }
    const auto* phrases = lex.lookup(t.surface);
    if (!phrases) {
      out.tokens.push_back(t);
      continue;
    }
    const std::vector<std::string>& phrase =
        (*phrases)[static_cast<std::size_t>(rng.below(phrases->size()))];
    std::vector<std::string> tags = expand_tag(t.tag, phrase.size());
    for (std::size_t i = 0; i < phrase.size(); ++i) {
      out.tokens.push_back(Token{phrase[i], std::move(tags[i])});
    }
  }
  return out;
}

Sentence shuffle_within_segments(const Sentence& sentence, double p, Scheme scheme,
                                 RandomStream& rng) {
  check_probability(p);
  std::vector<std::string> tags = sentence.tags();
  std::vector<EntitySpan> spans = decode_spans(tags, scheme, RepairPolicy::Strict);

  // Segments in position order: entity spans plus the maximal O runs
  // between, before, and after them.
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  std::size_t pos = 0;
  for (const EntitySpan& span : spans) {
    if (pos < span.start) segments.emplace_back(pos, span.start);
    segments.emplace_back(span.start, span.end);
    pos = span.end;
  }
  if (pos < tags.size()) segments.emplace_back(pos, tags.size());

  Sentence out = sentence;
  for (auto [begin, end] : segments) {
    if (!rng.bernoulli(p)) continue;
    std::vector<std::string> surfaces;
    surfaces.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) surfaces.push_back(out.tokens[i].surface);
    rng.shuffle(surfaces);
    for (std::size_t i = begin; i < end; ++i) out.tokens[i].surface = std::move(surfaces[i - begin]);
  }
  return out;
}

Corpus augment_corpus(const Corpus& corpus, const AugmentConfig& cfg, const SynonymLexicon& lex,
                      const LabelTokenDistribution& dist) {
  check_probability(cfg.p);
  if (cfg.techniques.empty()) throw InputError("augmentation requires at least one technique");
  if (cfg.copies_per_technique == 0) throw InputError("copies_per_technique must be positive");
  for (std::size_t i = 0; i < cfg.techniques.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.techniques.size(); ++j) {
      if (cfg.techniques[i] == cfg.techniques[j]) {
        throw InputError("technique \"" + to_string(cfg.techniques[i]) + "\" listed twice");
      }
    }
  }

  std::vector<Sentence> sentences = corpus.sentences;
  sentences.reserve(corpus.sentences.size() *
                    (1 + cfg.techniques.size() * cfg.copies_per_technique));
  for (Technique technique : cfg.techniques) {
    for (std::uint32_t copy = 0; copy < cfg.copies_per_technique; ++copy) {
      for (std::size_t ordinal = 0; ordinal < corpus.sentences.size(); ++ordinal) {
        RandomStream rng = RandomStream::derive(
            cfg.seed, {kStreamAugment, static_cast<std::uint64_t>(technique), copy, ordinal});
        const Sentence& s = corpus.sentences[ordinal];
        switch (technique) {
          case Technique::LWTR:
            sentences.push_back(lwtr(s, dist, cfg.p, rng));
            break;
          case Technique::SR:
            sentences.push_back(synonym_replace(s, lex, cfg.p, rng));
            break;
          case Technique::SIS:
            sentences.push_back(shuffle_within_segments(s, cfg.p, corpus.scheme, rng));
            break;
        }
      }
    }
  }
  Corpus out = make_corpus(std::move(sentences), corpus.scheme);
  out.doc_starts = corpus.doc_starts;
  return out;
}

}  // namespace nerkit
