#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "needstack/corpus.h"
#include "needstack/error.h"
#include "needstack/text_util.h"
#include "synth.h"

using namespace needstack;
using needstack::testing::Rng;
using Tokens = std::vector<std::string>;

TEST_SUITE("corpus") {

TEST_CASE("reader yields records in file order") {
  std::istringstream in(
      "{\"id\":\"1\",\"text\":\"We need masks\"}\n"
      "\n"
      "{\"id\":2,\"text\":\"Send help\",\"lang\":\"en\","
      "\"timestamp\":\"2020-03-01T00:00:00Z\"}\n");
  TweetReader r(in, OnError::kFail);
  auto a = r.next();
  REQUIRE(a);
  CHECK(a->id == "1");
  CHECK(a->text == "We need masks");
  CHECK_FALSE(a->lang);
  auto b = r.next();
  REQUIRE(b);
  CHECK(b->id == "2");
  CHECK(b->lang == "en");
  CHECK(b->timestamp == "2020-03-01T00:00:00Z");
  CHECK_FALSE(r.next());
  CHECK(r.records() == 2);
  CHECK(r.skipped() == 0);
}

TEST_CASE("skip policy counts malformed lines") {
  std::istringstream in(
      "not json\n"
      "{\"id\":\"1\",\"text\":\"ok\"}\n"
      "[1,2]\n"
      "{\"id\":\"2\"}\n"
      "{\"id\":\"3\",\"text\":\"   \"}\n"
      "{\"id\":\"1\",\"text\":\"duplicate id\"}\n"
      "{\"id\":\"a\\tb\",\"text\":\"tab in id\"}\n"
      "{\"id\":\"4\",\"text\":\"fine\",\"lang\":5}\n"
      "{\"id\":\"5\",\"text\":\"last\"}\n");
  TweetReader r(in, OnError::kSkip);
  std::vector<std::string> ids;
  while (auto t = r.next()) ids.push_back(t->id);
  CHECK(ids == std::vector<std::string>{"1", "5"});
  CHECK(r.skipped() == 7);
}

TEST_CASE("fail policy names the line") {
  std::istringstream in("{\"id\":\"1\",\"text\":\"ok\"}\n\nnot json\n");
  TweetReader r(in, OnError::kFail);
  CHECK(r.next());
  try {
    r.next();
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("empty input and missing file") {
  std::istringstream in("");
  TweetReader r(in, OnError::kFail);
  CHECK_FALSE(r.next());
  CHECK(r.records() == 0);
  CHECK_THROWS_AS(load_tweets("/nonexistent/tweets.jsonl", OnError::kSkip),
                  IoError);
  CHECK(parse_on_error("skip") == OnError::kSkip);
  CHECK(parse_on_error("fail") == OnError::kFail);
  CHECK_THROWS_AS(parse_on_error("ignore"), ConfigError);
}

TEST_CASE("skip policy survives arbitrary bytes") {
  Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    std::string body;
    int lines = rng.range(0, 20);
    for (int l = 0; l < lines; ++l) {
      int len = rng.range(0, 60);
      for (int i = 0; i < len; ++i) {
        char c = static_cast<char>(rng.uniform(256));
        body += c == '\n' ? ' ' : c;
      }
      if (rng.chance(0.3)) body += "{\"id\":\"x" + std::to_string(l) +
                                   "\",\"text\":\"hi\"}";
      body += '\n';
    }
    std::istringstream in(body);
    TweetReader r(in, OnError::kSkip);
    CHECK_NOTHROW(while (r.next()) {});
  }
}

TEST_CASE("sentence splitting") {
  CHECK(split_sentences("We need masks. Send help!") ==
        Tokens{"We need masks.", "Send help!"});
  CHECK(split_sentences("Dr. Smith needs PPE") == Tokens{"Dr. Smith needs PPE"});
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("one\ntwo") == Tokens{"one", "two"});
  CHECK(split_sentences("Really?! Yes...  ok") ==
        Tokens{"Really?!", "Yes...", "ok"});
  CHECK(split_sentences("e.g. gloves and masks. i.e. ppe") ==
        Tokens{"e.g. gloves and masks.", "i.e. ppe"});
  CHECK(split_sentences("3.5 tons needed") == Tokens{"3.5 tons needed"});
}

TEST_CASE("tokenizer examples") {
  CHECK(tokenize("#PPE needed NOW!") == Tokens{"#ppe", "needed", "now", "!"});
  CHECK(tokenize("see https://t.co/abc @WHO") == Tokens{"see", "URL", "@who"});
  CHECK(tokenize("medical-equipment") == Tokens{"medical-equipment"});
  CHECK(tokenize("don't panic") == Tokens{"don't", "panic"});
  CHECK(tokenize("(masks)") == Tokens{"(", "masks", ")"});
  CHECK(tokenize("-dash- 'q'") == Tokens{"-", "dash", "-", "'", "q", "'"});
  CHECK(tokenize("visit www.who.int.") == Tokens{"visit", "URL", "."});
  CHECK(tokenize("a # b") == Tokens{"a", "#", "b"});
  CHECK(tokenize("") == Tokens{});
  CHECK(tokenize("We\xE2\x80\x99re out") == Tokens{"we\xE2\x80\x99re", "out"});
  // Thumbs-up with a skin-tone modifier is one token.
  CHECK(tokenize("ok \xF0\x9F\x91\x8D\xF0\x9F\x8F\xBD!") ==
        Tokens{"ok", "\xF0\x9F\x91\x8D\xF0\x9F\x8F\xBD", "!"});
}

TEST_CASE("tokenize_tweet numbers non-empty sentences") {
  TweetRecord t{"42", std::nullopt, "We need masks. !!! Send help", {}};
  auto s = tokenize_tweet(t);
  REQUIRE(s.size() == 3);
  CHECK(s[0].tweet_id == "42");
  CHECK(s[0].index_in_tweet == 0);
  CHECK(s[2].index_in_tweet == 2);
  CHECK(s[2].tokens == Tokens{"send", "help"});
}

TEST_CASE("corpus file round trip") {
  std::vector<TokenSentence> in = {{"a", {"we", "need", "#ppe"}, 0},
                                   {"a", {"URL", "now"}, 1},
                                   {"b", {"x"}, 0}};
  std::ostringstream out;
  for (const auto &s : in) write_token_sentence(out, s);
  CHECK(out.str() == "a\t0\twe need #ppe\na\t1\tURL now\nb\t0\tx\n");
  std::istringstream back(out.str());
  auto got = read_token_corpus(back);
  REQUIRE(got.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(got[i].tweet_id == in[i].tweet_id);
    CHECK(got[i].tokens == in[i].tokens);
    CHECK(got[i].index_in_tweet == in[i].index_in_tweet);
  }
  std::istringstream bad("a\tzero\tx\n");
  CHECK_THROWS_AS(read_token_corpus(bad), ParseError);
}

namespace {

// Text from pieces; URLs are whole pieces so their spans are known.
struct Generated {
  std::string text;
  std::string alnum;  // expected lowercased alphanumerics outside URLs
};

Generated random_text(Rng &rng) {
  static const std::vector<std::string> kPieces = {
      "a",  "B",  "c",  "d",  "E",  "9",   "0",  ".",  ",",  "!",
      "?",  "-",  "'",  "#",  "@",  "(",   ")",  "\"", " ",  " ",
      "\n", "_",  "&",  ";",  "x",  "Y",   "z",  "\xE2\x80\x99",
      "\xF0\x9F\x98\xB7", "\xC3\xA9", "dr.", "e.g."};
  Generated g;
  int n = rng.range(0, 40);
  for (int i = 0; i < n; ++i) {
    if (rng.chance(0.05)) {
      g.text += " https://t.co/Ab9 ";
      continue;
    }
    const std::string &p = kPieces[rng.uniform(kPieces.size())];
    g.text += p;
    for (char c : p) {
      unsigned char u = static_cast<unsigned char>(c);
      if (u < 128 && std::isalnum(u)) g.alnum += static_cast<char>(std::tolower(u));
    }
  }
  return g;
}

std::string alnum_of(const std::vector<std::vector<std::string>> &sents) {
  std::string out;
  for (const auto &toks : sents) {
    for (const auto &t : toks) {
      if (t == kUrlToken) continue;
      for (char c : t) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u < 128 && std::isalnum(u)) out += c;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("property: tokenization is idempotent on its joined output") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    Generated g = random_text(rng);
    for (const std::string &s : split_sentences(g.text)) {
      Tokens once = tokenize(s);
      Tokens twice = tokenize(join(once, " "));
      CHECK_MESSAGE(once == twice, "input: " << s);
      for (const auto &t : once) {
        CHECK(!t.empty());
        CHECK(t.find_first_of(" \t\n\r") == std::string::npos);
      }
    }
  }
}

TEST_CASE("property: no alphanumeric content is lost") {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    Generated g = random_text(rng);
    std::vector<std::vector<std::string>> toks;
    for (const std::string &s : split_sentences(g.text)) {
      toks.push_back(tokenize(s));
    }
    std::string got = alnum_of(toks);
    std::string want = g.alnum;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK_MESSAGE(got == want, "input: " << g.text);
  }
}

}  // TEST_SUITE
