#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nerkit {

enum class Scheme { BIO, IO, BIOES };

std::string to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);  // case-insensitive

// Prefixes legal for a scheme: BIO {B,I}, IO {I}, BIOES {B,I,E,S}.
bool prefix_legal(char prefix, Scheme scheme);
std::string_view scheme_prefixes(Scheme scheme);

// One token: a surface form plus its scheme tag ("O" or prefix-hyphen-label).
struct Token {
  std::string surface;
  std::string tag;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  std::vector<std::string> surfaces() const;
  std::vector<std::string> tags() const;

  bool operator==(const Sentence&) const = default;
};

// Half-open token range carrying an entity label. The canonical,
// scheme-independent representation of an entity mention.
struct EntitySpan {
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  std::string label;

  bool operator==(const EntitySpan&) const = default;
  auto operator<=>(const EntitySpan&) const = default;
};

struct Corpus {
  std::vector<Sentence> sentences;
  Scheme scheme = Scheme::BIO;
  std::set<std::string> label_set;
  // Sentence indices where a document begins (from -DOCSTART- markers).
  std::vector<std::size_t> doc_starts;

  std::size_t token_count() const;

  bool operator==(const Corpus&) const = default;
};

// Splits "B-problem" into prefix 'B' and label "problem". Returns nullopt
// for "O" and for anything malformed (no hyphen, empty label, bad prefix).
struct TagParts {
  char prefix;
  std::string_view label;
};
std::optional<TagParts> split_tag(std::string_view tag);
std::string make_tag(char prefix, std::string_view label);
inline bool is_outside(std::string_view tag) { return tag == "O"; }

// True for "O" and for well-shaped prefix-hyphen-label tags.
bool tag_well_formed(std::string_view tag);

struct Violation {
  std::size_t sentence = 0;
  std::size_t position = 0;
  std::string message;
};

// Builds a corpus from sentences, inferring label_set from observed tags.
Corpus make_corpus(std::vector<Sentence> sentences, Scheme scheme);

// CoNLL-style reader. A line is blank (sentence boundary), a document
// marker (first field "-DOCSTART-"), or whitespace-separated fields where
// the first is the surface and the last is the tag. When no scheme is
// declared, the smallest scheme covering the observed prefixes is used
// (IO before BIO before BIOES).
Corpus read_conll(std::istream& in, std::optional<Scheme> declared = std::nullopt);
Corpus read_conll_file(const std::string& path, std::optional<Scheme> declared = std::nullopt);

// Canonical form: "surface<TAB>tag" lines, a blank line after every
// sentence, LF endings. read_conll(write_conll(c), c.scheme) == c.
void write_conll(const Corpus& corpus, std::ostream& out);
std::string write_conll_string(const Corpus& corpus);
void write_conll_file(const Corpus& corpus, const std::string& path);

// Every type-invariant violation (malformed tag, illegal prefix for the
// scheme, label missing from label_set, bad surface) with its location.
// Sequence-level well-formedness is repair's concern, not validate's.
std::vector<Violation> validate(const Corpus& corpus);

// Raw tokenized text: one sentence per line, tokens separated by spaces.
std::vector<std::vector<std::string>> read_raw_sentences(std::istream& in);
std::vector<std::vector<std::string>> read_raw_file(const std::string& path);

}  // namespace nerkit
