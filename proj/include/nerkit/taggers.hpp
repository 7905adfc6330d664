#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"

namespace nerkit {

// surface -> most frequent full tag; ties broken by lexicographically
// smallest tag; unseen surfaces fall back to O.
class UnigramModel {
 public:
  UnigramModel() = default;
  explicit UnigramModel(std::map<std::string, std::string> table, Scheme scheme)
      : table_(std::move(table)), scheme_(scheme) {}

  std::vector<std::string> tag(std::span<const std::string> surfaces) const;
  Scheme scheme() const { return scheme_; }
  const std::map<std::string, std::string>& table() const { return table_; }

  void save(std::ostream& out) const;
  static UnigramModel load(std::istream& in);

 private:
  std::map<std::string, std::string> table_;
  Scheme scheme_ = Scheme::BIO;
  static constexpr const char* kFallback = "O";
};

UnigramModel train_unigram(const Corpus& corpus);

// Greedy left-to-right averaged perceptron. Features per position:
// surface at -2..+2, lowercased surface, previous predicted tag, previous
// two predicted tags, 3-char suffix, word shape, bias.
class PerceptronModel {
 public:
  std::vector<std::string> tag(std::span<const std::string> surfaces) const;
  Scheme scheme() const { return scheme_; }
  const std::vector<std::string>& tag_names() const { return tag_names_; }

  void save(std::ostream& out) const;
  static PerceptronModel load(std::istream& in);

  friend PerceptronModel train_perceptron(const Corpus& corpus, std::uint32_t epochs,
                                          std::uint64_t seed);

 private:
  // feature string -> per-tag averaged weights (sparse by tag index).
  std::map<std::string, std::map<std::uint32_t, double>> weights_;
  std::vector<std::string> tag_names_;
  Scheme scheme_ = Scheme::BIO;
  std::uint32_t epochs_ = 0;
  std::uint64_t seed_ = 0;
};

PerceptronModel train_perceptron(const Corpus& corpus, std::uint32_t epochs,
                                 std::uint64_t seed);

// Tags every sentence of raw text; the result carries the model's scheme.
template <class Model>
Corpus tag_corpus(const Model& model, const std::vector<std::vector<std::string>>& raw) {
  std::vector<Sentence> sentences;
  sentences.reserve(raw.size());
  for (const auto& surfaces : raw) {
    std::vector<std::string> tags = model.tag(surfaces);
    Sentence s;
    s.tokens.reserve(surfaces.size());
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
      s.tokens.push_back(Token{surfaces[i], std::move(tags[i])});
    }
    sentences.push_back(std::move(s));
  }
  return make_corpus(std::move(sentences), model.scheme());
}

// Retags the corpus's own surfaces (gold tags ignored).
template <class Model>
Corpus retag_corpus(const Model& model, const Corpus& corpus) {
  std::vector<std::vector<std::string>> raw;
  raw.reserve(corpus.sentences.size());
  for (const Sentence& s : corpus.sentences) raw.push_back(s.surfaces());
  Corpus out = tag_corpus(model, raw);
  out.doc_starts = corpus.doc_starts;
  return out;
}

// Model files start with "nerkit-model <family> v1"; this loads either
// family behind one interface.
class AnyModel {
 public:
  static AnyModel load_file(const std::string& path);

  std::vector<std::string> tag(std::span<const std::string> surfaces) const;
  Scheme scheme() const;
  const std::string& family() const { return family_; }

 private:
  std::string family_;
  std::shared_ptr<UnigramModel> unigram_;
  std::shared_ptr<PerceptronModel> perceptron_;
};

void save_model_file(const UnigramModel& model, const std::string& path);
void save_model_file(const PerceptronModel& model, const std::string& path);

}  // namespace nerkit
