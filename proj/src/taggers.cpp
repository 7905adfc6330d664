// Baseline trainable taggers: a unigram lookup model and a greedy averaged
// perceptron, with a versioned text serialization for both.

#include "nerkit/taggers.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "nerkit/errors.hpp"
#include "nerkit/random.hpp"
#include "nerkit/util.hpp"

namespace nerkit {

namespace {

constexpr const char* kSentinelLeft = "<s>";
constexpr const char* kSentinelRight = "</s>";

std::string word_shape(std::string_view w) {
  std::string shape;
  char last = 0;
  for (unsigned char c : w) {
    char cls;
    if (std::isupper(c)) cls = 'X';
    else if (std::islower(c)) cls = 'x';
    else if (std::isdigit(c)) cls = 'd';
    else cls = static_cast<char>(c);
    if (shape.empty() || cls != last) shape += cls;
    last = cls;
  }
  return shape;
}

std::string suffix3(const std::string& w) {
  return w.size() <= 3 ? w : w.substr(w.size() - 3);
}

// Feature strings for one position. `prev`/`prev2` are the previous
// predicted tags (left sentinel at the sentence start).
void collect_features(std::span<const std::string> surfaces, std::size_t i,
                      const std::string& prev, const std::string& prev2,
                      std::vector<std::string>& out) {
  auto at = [&](std::ptrdiff_t off) -> const std::string& {
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + off;
    if (j < 0) { static const std::string left = kSentinelLeft; return left; }
    if (j >= static_cast<std::ptrdiff_t>(surfaces.size())) {
      static const std::string right = kSentinelRight;
      return right;
    }
    return surfaces[static_cast<std::size_t>(j)];
  };
  const std::string& w = surfaces[i];
  out.push_back("bias");
  out.push_back("w=" + w);
  out.push_back("lw=" + ascii_lower(w));
  out.push_back("w-1=" + at(-1));
  out.push_back("w+1=" + at(+1));
  out.push_back("w-2=" + at(-2));
  out.push_back("w+2=" + at(+2));
  out.push_back("t-1=" + prev);
  out.push_back("t-2t-1=" + prev2 + "|" + prev);
  out.push_back("suf3=" + suffix3(w));
  out.push_back("shape=" + word_shape(w));
}

std::string format_weight(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_weight(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + s.size()) throw InputError("model file: bad weight \"" + s + "\"");
  return v;
}

std::string expect_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("truncated model file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// "key value" line; returns the value.
std::string expect_field(std::istream& in, std::string_view key) {
  std::string line = expect_line(in);
  std::vector<std::string> parts = split_ws(line);
  if (parts.size() != 2 || parts[0] != key) {
    throw InputError("model file: expected \"" + std::string(key) + " <value>\", got \"" + line +
                     "\"");
  }
  return parts[1];
}

std::uint64_t parse_u64(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("model file: bad " + std::string(what) + " \"" + s + "\"");
  }
}

Scheme parse_scheme_field(const std::string& s) {
  std::optional<Scheme> scheme = parse_scheme(s);
  if (!scheme) throw InputError("model file: unknown scheme \"" + s + "\"");
  return *scheme;
}

void expect_magic(std::istream& in, std::string_view family) {
  std::string line = expect_line(in);
  std::string want = "nerkit-model " + std::string(family) + " v1";
  if (line != want) {
    throw InputError("model file: expected header \"" + want + "\", got \"" + line + "\"");
  }
}

void check_no_trailing(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) throw InputError("model file: trailing data \"" + line + "\"");
  }
}

}  // namespace

std::vector<std::string> UnigramModel::tag(std::span<const std::string> surfaces) const {
  std::vector<std::string> tags;
  tags.reserve(surfaces.size());
  for (const std::string& s : surfaces) {
    auto it = table_.find(s);
    tags.push_back(it == table_.end() ? kFallback : it->second);
  }
  return tags;
}

void UnigramModel::save(std::ostream& out) const {
  out << "nerkit-model unigram v1\n";
  out << "scheme " << to_string(scheme_) << "\n";
  out << "entries " << table_.size() << "\n";
  for (const auto& [surface, tag] : table_) out << surface << '\t' << tag << '\n';
}

UnigramModel UnigramModel::load(std::istream& in) {
  expect_magic(in, "unigram");
  Scheme scheme = parse_scheme_field(expect_field(in, "scheme"));
  std::uint64_t entries = parse_u64(expect_field(in, "entries"), "entry count");
  std::map<std::string, std::string> table;
  for (std::uint64_t i = 0; i < entries; ++i) {
    std::string line = expect_line(in);
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InputError("model file: expected surface<TAB>tag, got \"" + line + "\"");
    }
    std::string surface = line.substr(0, tab);
    std::string tag = line.substr(tab + 1);
    if (!tag_well_formed(tag)) throw InputError("model file: malformed tag \"" + tag + "\"");
    if (!table.emplace(std::move(surface), std::move(tag)).second) {
      throw InputError("model file: duplicate surface entry");
    }
  }
  check_no_trailing(in);
  return UnigramModel(std::move(table), scheme);
}

UnigramModel train_unigram(const Corpus& corpus) {
  if (corpus.token_count() == 0) throw InputError("cannot train on an empty corpus");
  std::map<std::string, std::map<std::string, std::uint64_t>> counts;
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens) ++counts[t.surface][t.tag];
  }
  std::map<std::string, std::string> table;
  for (const auto& [surface, by_tag] : counts) {
    const std::string* best = nullptr;
    std::uint64_t best_count = 0;
    for (const auto& [tag, n] : by_tag) {
      // Strict > keeps the first (lexicographically smallest) tag on ties.
      if (n > best_count) {
        best = &tag;
        best_count = n;
      }
    }
    table.emplace(surface, *best);
  }
  return UnigramModel(std::move(table), corpus.scheme);
}

std::vector<std::string> PerceptronModel::tag(std::span<const std::string> surfaces) const {
  std::vector<std::string> tags;
  tags.reserve(surfaces.size());
  if (tag_names_.empty()) {
    tags.assign(surfaces.size(), "O");
    return tags;
  }
  std::string prev = kSentinelLeft;
  std::string prev2 = kSentinelLeft;
  std::vector<std::string> feats;
  std::vector<double> scores(tag_names_.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    feats.clear();
    collect_features(surfaces, i, prev, prev2, feats);
    std::fill(scores.begin(), scores.end(), 0.0);
    for (const std::string& f : feats) {
      auto it = weights_.find(f);
      if (it == weights_.end()) continue;
      for (const auto& [tag_index, weight] : it->second) scores[tag_index] += weight;
    }
    std::size_t best = 0;
    for (std::size_t t = 1; t < scores.size(); ++t) {
      if (scores[t] > scores[best]) best = t;
    }
    prev2 = std::move(prev);
    prev = tag_names_[best];
    tags.push_back(tag_names_[best]);
  }
  return tags;
}

PerceptronModel train_perceptron(const Corpus& corpus, std::uint32_t epochs,
                                 std::uint64_t seed) {
  if (epochs == 0) throw InputError("epochs must be >= 1");
  if (corpus.token_count() == 0) throw InputError("cannot train on an empty corpus");

  std::set<std::string> tag_set;
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens) tag_set.insert(t.tag);
  }
  std::vector<std::string> tag_names(tag_set.begin(), tag_set.end());
  std::unordered_map<std::string, std::uint32_t> tag_id;
  for (std::uint32_t i = 0; i < tag_names.size(); ++i) tag_id[tag_names[i]] = i;
  const std::size_t n_tags = tag_names.size();

  // Dense weight/total/stamp blocks per interned feature; the classic
  // lazily-updated running-total trick makes averaging O(updates).
  std::unordered_map<std::string, std::uint32_t> feat_id;
  std::vector<double> weight;
  std::vector<double> total;
  std::vector<std::uint64_t> stamp;
  std::uint64_t now = 0;

  auto intern = [&](const std::string& f) {
    auto [it, inserted] =
        feat_id.try_emplace(f, static_cast<std::uint32_t>(feat_id.size()));
    if (inserted) {
      weight.resize(weight.size() + n_tags, 0.0);
      total.resize(total.size() + n_tags, 0.0);
      stamp.resize(stamp.size() + n_tags, 0);
    }
    return it->second;
  };
  auto update = [&](std::uint32_t fid, std::uint32_t t, double v) {
    std::size_t k = static_cast<std::size_t>(fid) * n_tags + t;
    total[k] += static_cast<double>(now - stamp[k]) * weight[k];
    stamp[k] = now;
    weight[k] += v;
  };

  std::vector<std::size_t> order(corpus.sentences.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::string> feats;
  std::vector<std::uint32_t> fids;
  std::vector<double> scores(n_tags);

  for (std::uint32_t epoch = 0; epoch < epochs; ++epoch) {
    RandomStream rng = RandomStream::derive(seed, {kStreamPerceptron, epoch});
    rng.shuffle(order);
    for (std::size_t si : order) {
      const Sentence& sentence = corpus.sentences[si];
      std::vector<std::string> surfaces = sentence.surfaces();
      std::string prev = kSentinelLeft;
      std::string prev2 = kSentinelLeft;
      for (std::size_t i = 0; i < surfaces.size(); ++i) {
        ++now;
        feats.clear();
        collect_features(surfaces, i, prev, prev2, feats);
        fids.clear();
        std::fill(scores.begin(), scores.end(), 0.0);
        for (const std::string& f : feats) {
          std::uint32_t fid = intern(f);
          fids.push_back(fid);
          const double* row = &weight[static_cast<std::size_t>(fid) * n_tags];
          for (std::size_t t = 0; t < n_tags; ++t) scores[t] += row[t];
        }
        std::size_t guess = 0;
        for (std::size_t t = 1; t < n_tags; ++t) {
          if (scores[t] > scores[guess]) guess = t;
        }
        std::uint32_t truth = tag_id.at(sentence.tokens[i].tag);
        if (static_cast<std::uint32_t>(guess) != truth) {
          for (std::uint32_t fid : fids) {
            update(fid, truth, +1.0);
            update(fid, static_cast<std::uint32_t>(guess), -1.0);
          }
        }
        prev2 = std::move(prev);
        prev = tag_names[guess];
      }
    }
  }

  PerceptronModel model;
  model.tag_names_ = std::move(tag_names);
  model.scheme_ = corpus.scheme;
  model.epochs_ = epochs;
  model.seed_ = seed;

  std::vector<std::pair<std::string, std::uint32_t>> named(feat_id.begin(), feat_id.end());
  std::sort(named.begin(), named.end());
  for (const auto& [name, fid] : named) {
    std::map<std::uint32_t, double> row;
    for (std::size_t t = 0; t < n_tags; ++t) {
      std::size_t k = static_cast<std::size_t>(fid) * n_tags + t;
      double summed = total[k] + static_cast<double>(now - stamp[k]) * weight[k];
      double averaged = summed / static_cast<double>(now);
      if (averaged != 0.0) row[static_cast<std::uint32_t>(t)] = averaged;
    }
    if (!row.empty()) model.weights_.emplace(name, std::move(row));
  }
  return model;
}

void PerceptronModel::save(std::ostream& out) const {
  out << "nerkit-model perceptron v1\n";
  out << "scheme " << to_string(scheme_) << "\n";
  out << "epochs " << epochs_ << "\n";
  out << "seed " << seed_ << "\n";
  out << "tags " << tag_names_.size() << "\n";
  for (const std::string& t : tag_names_) out << t << '\n';
  out << "features " << weights_.size() << "\n";
  for (const auto& [feature, row] : weights_) {
    out << feature << '\t';
    bool first = true;
    for (const auto& [tag_index, w] : row) {
      if (!first) out << ' ';
      out << tag_index << ':' << format_weight(w);
      first = false;
    }
    out << '\n';
  }
}

PerceptronModel PerceptronModel::load(std::istream& in) {
  expect_magic(in, "perceptron");
  PerceptronModel model;
  model.scheme_ = parse_scheme_field(expect_field(in, "scheme"));
  model.epochs_ = static_cast<std::uint32_t>(parse_u64(expect_field(in, "epochs"), "epochs"));
  model.seed_ = parse_u64(expect_field(in, "seed"), "seed");
  std::uint64_t n_tags = parse_u64(expect_field(in, "tags"), "tag count");
  for (std::uint64_t i = 0; i < n_tags; ++i) {
    std::string tag = expect_line(in);
    if (!tag_well_formed(tag)) throw InputError("model file: malformed tag \"" + tag + "\"");
    model.tag_names_.push_back(std::move(tag));
  }
  std::uint64_t n_features = parse_u64(expect_field(in, "features"), "feature count");
  for (std::uint64_t i = 0; i < n_features; ++i) {
    std::string line = expect_line(in);
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InputError("model file: expected feature<TAB>weights, got \"" + line + "\"");
    }
    std::string feature = line.substr(0, tab);
    std::map<std::uint32_t, double> row;
    for (const std::string& cell : split_ws(line.substr(tab + 1))) {
      std::size_t colon = cell.find(':');
      if (colon == std::string::npos) {
        throw InputError("model file: expected index:weight, got \"" + cell + "\"");
      }
      std::uint64_t index = parse_u64(cell.substr(0, colon), "tag index");
      if (index >= n_tags) throw InputError("model file: tag index out of range");
      row[static_cast<std::uint32_t>(index)] = parse_weight(cell.substr(colon + 1));
    }
    if (row.empty()) throw InputError("model file: feature \"" + feature + "\" has no weights");
    if (!model.weights_.emplace(std::move(feature), std::move(row)).second) {
      throw InputError("model file: duplicate feature entry");
    }
  }
  check_no_trailing(in);
  return model;
}

AnyModel AnyModel::load_file(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw InputError("cannot open model file: " + path);
  std::string header;
  if (!std::getline(probe, header)) throw InputError("truncated model file: " + path);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  std::vector<std::string> parts = split_ws(header);
  if (parts.size() != 3 || parts[0] != "nerkit-model" || parts[2] != "v1") {
    throw InputError("not a model file (bad header): " + path);
  }
  std::ifstream in(path);
  AnyModel model;
  model.family_ = parts[1];
  if (parts[1] == "unigram") {
    model.unigram_ = std::make_shared<UnigramModel>(UnigramModel::load(in));
  } else if (parts[1] == "perceptron") {
    model.perceptron_ = std::make_shared<PerceptronModel>(PerceptronModel::load(in));
  } else {
    throw InputError("unknown model family \"" + parts[1] + "\" in " + path);
  }
  return model;
}

std::vector<std::string> AnyModel::tag(std::span<const std::string> surfaces) const {
  return unigram_ ? unigram_->tag(surfaces) : perceptron_->tag(surfaces);
}

Scheme AnyModel::scheme() const {
  return unigram_ ? unigram_->scheme() : perceptron_->scheme();
}

namespace {

template <class Model>
void save_model_file_impl(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write model file: " + path);
  model.save(out);
  if (!out) throw InputError("failed writing model file: " + path);
}

}  // namespace

void save_model_file(const UnigramModel& model, const std::string& path) {
  save_model_file_impl(model, path);
}

void save_model_file(const PerceptronModel& model, const std::string& path) {
  save_model_file_impl(model, path);
}

}  // namespace nerkit
