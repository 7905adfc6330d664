// Tagged-corpus data model and the CoNLL-style on-disk format.

#include "nerkit/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "nerkit/errors.hpp"
#include "nerkit/util.hpp"

namespace nerkit {

namespace {
constexpr std::string_view kDocStart = "-DOCSTART-";
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::BIO: return "BIO";
    case Scheme::IO: return "IO";
    case Scheme::BIOES: return "BIOES";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  std::string up;
  for (char c : name) up += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
  if (up == "BIO") return Scheme::BIO;
  if (up == "IO") return Scheme::IO;
  if (up == "BIOES") return Scheme::BIOES;
  return std::nullopt;
}

std::string_view scheme_prefixes(Scheme scheme) {
  switch (scheme) {
    case Scheme::BIO: return "BI";
    case Scheme::IO: return "I";
    case Scheme::BIOES: return "BIES";
  }
  return "";
}

bool prefix_legal(char prefix, Scheme scheme) {
  return scheme_prefixes(scheme).find(prefix) != std::string_view::npos;
}

std::vector<std::string> Sentence::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<std::string> Sentence::tags() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.tag);
  return out;
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const Sentence& s : sentences) n += s.size();
  return n;
}

std::optional<TagParts> split_tag(std::string_view tag) {
  if (tag.size() < 3) return std::nullopt;
  char prefix = tag[0];
  if (prefix != 'B' && prefix != 'I' && prefix != 'E' && prefix != 'S') return std::nullopt;
  if (tag[1] != '-') return std::nullopt;
  return TagParts{prefix, tag.substr(2)};
}

std::string make_tag(char prefix, std::string_view label) {
  std::string out;
  out.reserve(label.size() + 2);
  out += prefix;
  out += '-';
  out += label;
  return out;
}

bool tag_well_formed(std::string_view tag) {
  return is_outside(tag) || split_tag(tag).has_value();
}

Corpus make_corpus(std::vector<Sentence> sentences, Scheme scheme) {
  Corpus c;
  c.sentences = std::move(sentences);
  c.scheme = scheme;
  for (const Sentence& s : c.sentences) {
    for (const Token& t : s.tokens) {
      if (auto parts = split_tag(t.tag)) c.label_set.emplace(parts->label);
    }
  }
  return c;
}

namespace {

Scheme infer_scheme(const std::string& prefixes_seen) {
  bool b = prefixes_seen.find('B') != std::string::npos;
  bool e = prefixes_seen.find('E') != std::string::npos;
  bool s = prefixes_seen.find('S') != std::string::npos;
  if (e || s) return Scheme::BIOES;
  if (b) return Scheme::BIO;
  return Scheme::IO;
}

}  // namespace

Corpus read_conll(std::istream& in, std::optional<Scheme> declared) {
  Corpus corpus;
  Sentence current;
  std::string prefixes_seen;
  bool pending_doc_start = false;
  std::string line;
  std::size_t line_no = 0;

  auto flush_sentence = [&] {
    if (current.tokens.empty()) return;
    if (pending_doc_start) {
      corpus.doc_starts.push_back(corpus.sentences.size());
      pending_doc_start = false;
    }
    corpus.sentences.push_back(std::move(current));
    current = Sentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields = split_ws(line);
    if (fields.empty()) {
      flush_sentence();
      continue;
    }
    if (fields.front() == kDocStart) {
      flush_sentence();
      pending_doc_start = true;
      continue;
    }
    if (fields.size() < 2) {
      throw InputError("line " + std::to_string(line_no) + ": expected at least 2 fields, got " +
                       std::to_string(fields.size()) + " (\"" + line + "\")");
    }
    Token token{fields.front(), fields.back()};
    if (!tag_well_formed(token.tag)) {
      throw InputError("line " + std::to_string(line_no) + ": malformed tag \"" + token.tag + "\"");
    }
    if (auto parts = split_tag(token.tag)) {
      if (prefixes_seen.find(parts->prefix) == std::string::npos) prefixes_seen += parts->prefix;
      corpus.label_set.emplace(parts->label);
    }
    current.tokens.push_back(std::move(token));
  }
  flush_sentence();
  if (pending_doc_start) corpus.doc_starts.push_back(corpus.sentences.size());

  corpus.scheme = declared ? *declared : infer_scheme(prefixes_seen);

  if (declared) {
    for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
      const Sentence& s = corpus.sentences[si];
      for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
        auto parts = split_tag(s.tokens[ti].tag);
        if (parts && !prefix_legal(parts->prefix, corpus.scheme)) {
          throw InputError("sentence " + std::to_string(si) + ", position " + std::to_string(ti) +
                           ": prefix '" + std::string(1, parts->prefix) + "' of tag \"" +
                           s.tokens[ti].tag + "\" is illegal for scheme " + to_string(corpus.scheme));
        }
      }
    }
  }
  return corpus;
}

Corpus read_conll_file(const std::string& path, std::optional<Scheme> declared) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + path + "\" for reading");
  try {
    return read_conll(in, declared);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_conll(const Corpus& corpus, std::ostream& out) {
  std::size_t next_boundary = 0;
  auto emit_boundaries_at = [&](std::size_t index) {
    while (next_boundary < corpus.doc_starts.size() && corpus.doc_starts[next_boundary] == index) {
      out << kDocStart << "\tO\n\n";
      ++next_boundary;
    }
  };
  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    emit_boundaries_at(si);
    for (const Token& t : corpus.sentences[si].tokens) {
      out << t.surface << '\t' << t.tag << '\n';
    }
    out << '\n';
  }
  emit_boundaries_at(corpus.sentences.size());
}

std::string write_conll_string(const Corpus& corpus) {
  std::ostringstream out;
  write_conll(corpus, out);
  return out.str();
}

void write_conll_file(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open \"" + path + "\" for writing");
  write_conll(corpus, out);
  if (!out) throw InputError("error while writing \"" + path + "\"");
}

std::vector<Violation> validate(const Corpus& corpus) {
  std::vector<Violation> violations;
  auto add = [&](std::size_t si, std::size_t ti, std::string msg) {
    violations.push_back(Violation{si, ti, std::move(msg)});
  };
  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& s = corpus.sentences[si];
    if (s.tokens.empty()) add(si, 0, "empty sentence");
    for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
      const Token& t = s.tokens[ti];
      if (t.surface.empty()) {
        add(si, ti, "empty surface");
      } else if (t.surface.find_first_of(" \t\n\r") != std::string::npos) {
        add(si, ti, "surface \"" + t.surface + "\" contains whitespace");
      }
      if (is_outside(t.tag)) continue;
      auto parts = split_tag(t.tag);
      if (!parts) {
        add(si, ti, "malformed tag \"" + t.tag + "\"");
        continue;
      }
      if (!prefix_legal(parts->prefix, corpus.scheme)) {
        add(si, ti, "prefix '" + std::string(1, parts->prefix) + "' of tag \"" + t.tag +
                        "\" is illegal for scheme " + to_string(corpus.scheme));
      }
      if (!corpus.label_set.contains(std::string(parts->label))) {
        add(si, ti, "label \"" + std::string(parts->label) + "\" not in label set");
      }
    }
  }
  return violations;
}

std::vector<std::vector<std::string>> read_raw_sentences(std::istream& in) {
  std::vector<std::vector<std::string>> sentences;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tokens = split_ws(line);
    if (!tokens.empty()) sentences.push_back(std::move(tokens));
  }
  return sentences;
}

std::vector<std::vector<std::string>> read_raw_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + path + "\" for reading");
  return read_raw_sentences(in);
}

}  // namespace nerkit
