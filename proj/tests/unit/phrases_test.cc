#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "needstack/error.h"
#include "needstack/phrases.h"
#include "needstack/text_util.h"
#include "synth.h"

using namespace needstack;
using needstack::testing::Rng;
using Tokens = std::vector<std::string>;

namespace {

TokenSentence sent(Tokens t) { return {"t", std::move(t), 0}; }

// `pairs` filler pairs of distinct one-off tokens, two per sentence.
void add_filler(std::vector<TokenSentence> &c, int pairs) {
  for (int i = 0; i < pairs; ++i) {
    c.push_back(sent({"f" + std::to_string(i) + "a",
                      "f" + std::to_string(i) + "b"}));
  }
}

}  // namespace

TEST_SUITE("phrases") {

TEST_CASE("rescaled npmi oracles") {
  // Always adjacent: ln(0.1 / 0.01) / -ln 0.1 = 1.
  CHECK(rescaled_npmi(10, 10, 10, 100) == doctest::Approx(1.0).epsilon(1e-12));
  // Independent: p(x,y) = p(x) p(y) = 0.01.
  CHECK(rescaled_npmi(1, 10, 10, 100) == doctest::Approx(0.5).epsilon(1e-12));
  // Hand value: pxy = 0.05, px = 0.2, py = 0.1; npmi = ln 2.5 / ln 20.
  double npmi = std::log(2.5) / std::log(20.0);
  CHECK(rescaled_npmi(5, 20, 10, 100) ==
        doctest::Approx((npmi + 1) / 2).epsilon(1e-12));
  CHECK(rescaled_npmi(7, 7, 7, 7) == 1.0);
  CHECK(rescaled_npmi(0, 3, 3, 10) == 0.0);
}

TEST_CASE("perfectly correlated pair is mined with score 1") {
  std::vector<TokenSentence> c;
  for (int i = 0; i < 10; ++i) c.push_back(sent({"x", "y"}));
  add_filler(c, 90);  // 100 adjacent pairs in total
  PhraseTable t = mine_phrases(c, PhraseConfig{});
  REQUIRE(t.size() == 1);
  REQUIRE(t.score({"x", "y"}));
  CHECK(*t.score({"x", "y"}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("count gate") {
  std::vector<TokenSentence> c;
  for (int i = 0; i < 4; ++i) c.push_back(sent({"x", "y"}));
  add_filler(c, 36);
  PhraseConfig cfg;
  cfg.min_pair_count = 5;
  CHECK(mine_phrases(c, cfg).empty());
  cfg.min_pair_count = 4;
  CHECK(mine_phrases(c, cfg).contains({"x", "y"}));
}

TEST_CASE("independent pair stays below threshold") {
  // x and y each open/close 10 of 100 pairs, co-occurring once.
  std::vector<TokenSentence> c;
  c.push_back(sent({"x", "y"}));
  for (int i = 0; i < 9; ++i) {
    c.push_back(sent({"x", "p" + std::to_string(i)}));
    c.push_back(sent({"q" + std::to_string(i), "y"}));
  }
  add_filler(c, 81);
  PhraseConfig cfg;
  cfg.min_pair_count = 1;
  // A second pass would see "x y" as the only remaining pair.
  cfg.max_passes = 1;
  cfg.threshold = 0.5 + 1e-9;
  PhraseTable t = mine_phrases(c, cfg);
  CHECK_FALSE(t.contains({"x", "y"}));
  cfg.threshold = 0.5 - 1e-9;
  t = mine_phrases(c, cfg);
  REQUIRE(t.contains({"x", "y"}));
  CHECK(*t.score({"x", "y"}) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("later passes grow trigrams") {
  std::vector<TokenSentence> c;
  for (int i = 0; i < 20; ++i) {
    c.push_back(sent({"personal", "protective", "equipment"}));
  }
  add_filler(c, 200);
  PhraseTable t = mine_phrases(c, PhraseConfig{});
  CHECK(t.contains({"personal", "protective", "equipment"}));
  CHECK(annotate_phrases(Tokens{"personal", "protective", "equipment"}, t) ==
        Tokens{"personal-protective-equipment"});
}

TEST_CASE("empty corpus and bad config") {
  CHECK_THROWS_WITH_AS(mine_phrases({}, PhraseConfig{}), "empty corpus",
                       DataError);
  PhraseConfig bad;
  bad.threshold = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = {};
  bad.min_pair_count = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = {};
  bad.max_passes = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("table invariants") {
  PhraseTable t;
  CHECK_THROWS_AS(t.insert({"solo"}, 0.9), DataError);
  CHECK_THROWS_AS(t.insert({"a", "b"}, 1.1), DataError);
  CHECK_THROWS_AS(t.insert({"a", "b"}, -0.1), DataError);
  t.insert({"a", "b"}, 0.9);
  t.insert({"a", "b", "c"}, 0.85);
  t.insert({"c", "d"}, 0.9);
  auto e = t.sorted_entries();
  REQUIRE(e.size() == 3);
  CHECK(e[0].components == Tokens{"a", "b"});
  CHECK(e[1].components == Tokens{"c", "d"});
  CHECK(e[2].components == Tokens{"a", "b", "c"});
  Tokens toks{"a", "b", "c", "d"};
  CHECK(t.longest_match(toks) == 3);
  CHECK(t.longest_match(std::span<const std::string>(toks).subspan(1)) == 0);
}

TEST_CASE("annotate examples") {
  PhraseTable t;
  t.insert({"personal", "protective", "equipment"}, 0.9);
  CHECK(annotate_phrases(Tokens{"personal", "protective", "equipment"}, t) ==
        Tokens{"personal-protective-equipment"});
  CHECK(annotate_phrases(Tokens{"we", "need", "masks"}, PhraseTable{}) ==
        Tokens{"we", "need", "masks"});
  PhraseTable ab;
  ab.insert({"a", "b"}, 0.9);
  ab.insert({"b", "c"}, 0.9);
  CHECK(annotate_phrases(Tokens{"a", "b", "c"}, ab) == Tokens{"a-b", "c"});
}

TEST_CASE("phrase table file round trip") {
  PhraseTable t;
  t.insert({"medical", "equipment"}, 0.93);
  t.insert({"personal", "protective", "equipment"}, 0.1 + 0.2);
  std::ostringstream out;
  save_phrase_table(out, t);
  CHECK(out.str() ==
        "medical equipment\t0.93\npersonal protective equipment\t"
        "0.30000000000000004\n");
  std::istringstream in(out.str());
  PhraseTable back = load_phrase_table(in);
  CHECK(back.sorted_entries().size() == 2);
  CHECK(*back.score({"personal", "protective", "equipment"}) == 0.1 + 0.2);
  std::istringstream bad("solo\t0.9\n");
  CHECK_THROWS(load_phrase_table(bad));
  std::istringstream bad2("a b\tnope\n");
  CHECK_THROWS_AS(load_phrase_table(bad2), ParseError);
}

TEST_CASE("property: annotation preserves component order") {
  Rng rng(21);
  const Tokens alphabet = {"a", "b", "c", "d", "e"};
  for (int round = 0; round < 500; ++round) {
    PhraseTable t;
    int phrases = rng.range(0, 6);
    for (int p = 0; p < phrases; ++p) {
      Tokens comps;
      int len = rng.range(2, 4);
      for (int i = 0; i < len; ++i) comps.push_back(alphabet[rng.uniform(5)]);
      t.insert(comps, rng.real());
    }
    Tokens in;
    int n = rng.range(0, 15);
    for (int i = 0; i < n; ++i) in.push_back(alphabet[rng.uniform(5)]);
    Tokens out = annotate_phrases(in, t);
    CHECK(out.size() <= in.size());
    Tokens split_back;
    for (const auto &tok : out) {
      for (auto &piece : split(tok, kPhraseJoiner)) split_back.push_back(piece);
    }
    CHECK(split_back == in);
    // Every phrase merges when annotated on its own components.
    for (const PhraseEntry &e : t.sorted_entries()) {
      CHECK(annotate_phrases(e.components, t) ==
            Tokens{join_phrase(e.components)});
    }
  }
}

TEST_CASE("property: pair-count merge is associative and commutative") {
  Rng rng(22);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::vector<std::uint32_t>> sents(rng.range(0, 30));
    for (auto &s : sents) {
      int len = rng.range(0, 8);
      for (int i = 0; i < len; ++i) {
        s.push_back(static_cast<std::uint32_t>(rng.uniform(6)));
      }
    }
    PairCounts whole, a, b, c;
    for (std::size_t i = 0; i < sents.size(); ++i) {
      whole.add_sentence(sents[i]);
      (i % 3 == 0 ? a : i % 3 == 1 ? b : c).add_sentence(sents[i]);
    }
    PairCounts ab_c = a;
    ab_c.merge(b);
    ab_c.merge(c);
    PairCounts bc = b;
    bc.merge(c);
    PairCounts a_bc = a;
    a_bc.merge(bc);
    PairCounts cba = c;
    cba.merge(b);
    cba.merge(a);
    CHECK(ab_c == whole);
    CHECK(a_bc == whole);
    CHECK(cba == whole);
  }
}

TEST_CASE("property: mining is deterministic and within bounds") {
  Rng rng(23);
  for (int round = 0; round < 20; ++round) {
    std::vector<TokenSentence> c;
    int n = rng.range(1, 200);
    for (int i = 0; i < n; ++i) {
      Tokens t;
      int len = rng.range(1, 10);
      for (int k = 0; k < len; ++k) t.push_back("w" + std::to_string(rng.uniform(12)));
      c.push_back(sent(t));
    }
    PhraseConfig cfg;
    cfg.min_pair_count = 2;
    cfg.threshold = 0.6;
    PhraseTable a = mine_phrases(c, cfg);
    PhraseTable b = mine_phrases(c, cfg);
    auto ea = a.sorted_entries();
    auto eb = b.sorted_entries();
    REQUIRE(ea.size() == eb.size());
    for (std::size_t i = 0; i < ea.size(); ++i) {
      CHECK(ea[i].components == eb[i].components);
      CHECK(ea[i].score == eb[i].score);
      CHECK(ea[i].score >= cfg.threshold);
      CHECK(ea[i].score <= 1.0);
      CHECK(ea[i].components.size() >= 2);
    }
  }
}

}  // TEST_SUITE
