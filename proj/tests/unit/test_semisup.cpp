#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "nerkit/errors.hpp"
#include "nerkit/schemes.hpp"
#include "nerkit/semisup.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nerkit;

namespace {

using Tags = std::vector<std::string>;
using Spans = std::vector<EntitySpan>;

Tags consensus2(const Tags& a, const Tags& b, Scheme scheme = Scheme::BIO) {
  std::vector<Tags> preds{a, b};
  return consensus_tags(preds, a.size(), scheme, RepairPolicy::Conll);
}

Sentence with_tags(const std::vector<std::string>& surfaces, const Tags& tags) {
  Sentence s;
  for (std::size_t i = 0; i < surfaces.size(); ++i) s.tokens.push_back(Token{surfaces[i], tags[i]});
  return s;
}

Corpus random_prediction(gen::Rng& rng, const std::vector<std::vector<std::string>>& surfaces,
                         Scheme scheme) {
  std::vector<Sentence> ss;
  ss.reserve(surfaces.size());
  for (const auto& sf : surfaces) {
    ss.push_back(with_tags(sf, gen::random_raw_tags(rng, sf.size(), scheme)));
  }
  return make_corpus(std::move(ss), scheme);
}

}  // namespace

TEST_CASE("identical predictions survive consensus unchanged") {
  Tags t{"B-problem", "I-problem", "O"};
  CHECK(consensus2(t, t) == t);
}

TEST_CASE("span boundary disagreement kills the span") {
  Tags a{"B-problem", "I-problem", "O"};
  Tags b{"B-problem", "O", "O"};
  CHECK(consensus2(a, b) == Tags{"O", "O", "O"});
}

TEST_CASE("label disagreement kills the span") {
  Tags a{"B-problem", "I-problem", "O"};
  Tags b{"B-treatment", "I-treatment", "O"};
  CHECK(consensus2(a, b) == Tags{"O", "O", "O"});
}

TEST_CASE("agreement on one span survives a dispute over another") {
  Tags a{"B-problem", "O", "B-test", "O"};
  Tags b{"B-problem", "O", "O", "B-test"};
  CHECK(consensus2(a, b) == Tags{"B-problem", "O", "O", "O"});
}

TEST_CASE("consensus validates its inputs") {
  Tags a{"O", "O"};
  Tags b{"O"};
  std::vector<Tags> misaligned{a, b};
  CHECK_THROWS_AS(consensus_tags(misaligned, 2, Scheme::BIO, RepairPolicy::Conll), InputError);
  std::vector<Tags> lonely{a};
  CHECK_THROWS_AS(consensus_tags(lonely, 2, Scheme::BIO, RepairPolicy::Conll), InputError);
}

TEST_CASE("consensus of two identical predictions equals the repaired spans") {
  gen::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    Tags t = gen::random_raw_tags(rng, 1 + rng.below(20), Scheme::BIO);
    CHECK(consensus2(t, t) == repair_tags(t, Scheme::BIO, RepairPolicy::Conll));
  }
}

TEST_CASE("consensus equals the brute-force span intersection and is commutative") {
  gen::Rng rng(42);
  for (Scheme scheme : {Scheme::BIO, Scheme::BIOES}) {
    for (int i = 0; i < 250; ++i) {
      std::size_t len = 1 + rng.below(20);
      Tags a = gen::random_raw_tags(rng, len, scheme);
      Tags b = gen::random_raw_tags(rng, len, scheme);
      Tags ab = consensus2(a, b, scheme);
      CHECK(ab == consensus2(b, a, scheme));

      Spans got = decode_spans(ab, scheme, RepairPolicy::Strict);
      Spans want = oracles::intersect_spans(decode_spans(a, scheme, RepairPolicy::Conll),
                                            decode_spans(b, scheme, RepairPolicy::Conll));
      CHECK(got == want);
    }
  }
}

TEST_CASE("a third model never enlarges the consensus") {
  gen::Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    std::size_t len = 1 + rng.below(20);
    Tags a = gen::random_raw_tags(rng, len, Scheme::BIO);
    Tags b = gen::random_raw_tags(rng, len, Scheme::BIO);
    Tags c = gen::random_raw_tags(rng, len, Scheme::BIO);
    Spans two = decode_spans(consensus2(a, b), Scheme::BIO, RepairPolicy::Strict);
    std::vector<Tags> three{a, b, c};
    Spans all = decode_spans(consensus_tags(three, len, Scheme::BIO, RepairPolicy::Conll),
                             Scheme::BIO, RepairPolicy::Strict);
    CHECK(all.size() <= two.size());
    for (const EntitySpan& s : all) {
      CHECK(std::find(two.begin(), two.end(), s) != two.end());
    }
  }
}

TEST_CASE("silver corpus keeps agreed sentences and drops all-O ones") {
  std::vector<std::string> s1{"pain", "noted", "today"};
  std::vector<std::string> s2{"no", "issues"};
  Corpus m1 = make_corpus({with_tags(s1, {"B-problem", "O", "O"}), with_tags(s2, {"O", "O"})},
                          Scheme::BIO);
  Corpus m2 = make_corpus({with_tags(s1, {"B-problem", "O", "B-occurrence"}),
                           with_tags(s2, {"O", "O"})},
                          Scheme::BIO);
  ConsensusConfig cfg;
  cfg.scheme = Scheme::BIO;
  Corpus silver = build_silver_corpus({m1, m2}, cfg);
  REQUIRE(silver.sentences.size() == 1);
  CHECK(silver.sentences[0].surfaces() == s1);
  CHECK(silver.sentences[0].tags() == Tags{"B-problem", "O", "O"});

  cfg.drop_all_o = false;
  Corpus full = build_silver_corpus({m1, m2}, cfg);
  REQUIRE(full.sentences.size() == 2);
  CHECK(full.sentences[1].tags() == Tags{"O", "O"});
}

TEST_CASE("silver corpus intersects across schemes and re-encodes in the working scheme") {
  std::vector<std::string> s{"chest", "pain", "."};
  Corpus bio = make_corpus({with_tags(s, {"B-problem", "I-problem", "O"})}, Scheme::BIO);
  Corpus bioes = make_corpus({with_tags(s, {"B-problem", "E-problem", "O"})}, Scheme::BIOES);
  ConsensusConfig cfg;
  cfg.scheme = Scheme::BIOES;
  Corpus silver = build_silver_corpus({bio, bioes}, cfg);
  REQUIRE(silver.sentences.size() == 1);
  CHECK(silver.sentences[0].tags() == Tags{"B-problem", "E-problem", "O"});
  CHECK(silver.scheme == Scheme::BIOES);
}

TEST_CASE("silver corpus rejects misaligned predictions") {
  std::vector<std::string> s{"a", "b"};
  Corpus two = make_corpus({with_tags(s, {"O", "O"}), with_tags(s, {"O", "O"})}, Scheme::BIO);
  Corpus one = make_corpus({with_tags(s, {"O", "O"})}, Scheme::BIO);
  ConsensusConfig cfg;
  CHECK_THROWS_AS(build_silver_corpus({two, one}, cfg), InputError);
  CHECK_THROWS_AS(build_silver_corpus({one}, cfg), InputError);

  Corpus shorter = make_corpus({with_tags({"a"}, {"O"})}, Scheme::BIO);
  CHECK_THROWS_AS(build_silver_corpus({one, shorter}, cfg), InputError);

  Corpus other_words = make_corpus({with_tags({"a", "c"}, {"O", "O"})}, Scheme::BIO);
  CHECK_THROWS_AS(build_silver_corpus({one, other_words}, cfg), InputError);
}

TEST_CASE("with drop_all_o every silver sentence has at least one span, in input order") {
  gen::Rng rng(44);
  std::vector<std::vector<std::string>> surfaces;
  for (int i = 0; i < 120; ++i) {
    std::vector<std::string> s;
    std::size_t len = 1 + rng.below(12);
    for (std::size_t k = 0; k < len; ++k) {
      s.push_back(gen::small_vocab()[rng.below(gen::small_vocab().size())] + std::to_string(i));
    }
    surfaces.push_back(std::move(s));
  }
  Corpus a = random_prediction(rng, surfaces, Scheme::BIO);
  Corpus b = random_prediction(rng, surfaces, Scheme::BIO);
  ConsensusConfig cfg;
  Corpus silver = build_silver_corpus({a, b}, cfg);
  CHECK(silver.sentences.size() <= surfaces.size());
  for (const Sentence& s : silver.sentences) {
    CHECK_FALSE(decode_spans(s.tags(), Scheme::BIO, RepairPolicy::Strict).empty());
  }
  // Retained sentences appear in their original relative order.
  std::size_t cursor = 0;
  for (const Sentence& s : silver.sentences) {
    while (cursor < surfaces.size() && surfaces[cursor] != s.surfaces()) ++cursor;
    REQUIRE(cursor < surfaces.size());
    ++cursor;
  }
}

TEST_CASE("concatenate appends sentences and shifts document starts") {
  gen::Rng rng(45);
  Corpus base = gen::random_corpus(rng, Scheme::BIOES, 5);
  base.doc_starts = {0, 3};
  Corpus extra = gen::random_corpus(rng, Scheme::BIOES, 3);
  extra.doc_starts = {1};
  Corpus out = concatenate(base, extra);
  REQUIRE(out.sentences.size() == 8);
  CHECK(out.sentences[6].tokens == extra.sentences[1].tokens);
  CHECK(out.doc_starts == std::vector<std::size_t>{0, 3, 6});
  CHECK(out.token_count() == base.token_count() + extra.token_count());
  for (const std::string& label : extra.label_set) CHECK(out.label_set.contains(label));

  Corpus bio = gen::random_corpus(rng, Scheme::BIO, 2);
  CHECK_THROWS_AS(concatenate(base, bio), InputError);
}
