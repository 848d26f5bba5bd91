#ifndef NEEDSTACK_TESTS_SYNTH_H_
#define NEEDSTACK_TESTS_SYNTH_H_

// Deterministic generators for property tests and acceptance runs.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "needstack/conllu.h"
#include "needstack/corpus.h"
#include "needstack/topneeds.h"

namespace needstack::testing {

// std::mt19937_64 output is fixed by the standard; the distributions are not,
// so sampling is done by hand here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n). n > 0.
  std::size_t uniform(std::size_t n) { return next() % n; }
  // Uniform in [lo, hi].
  int range(int lo, int hi) {
    return lo + static_cast<int>(uniform(static_cast<std::size_t>(hi - lo + 1)));
  }
  // Uniform in [0, 1).
  double real() { return (next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return real() < p; }
  float gauss_ish() {
    // Sum of uniforms: cheap, bounded, and good enough for random vectors.
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += real();
    return static_cast<float>(s - 2.0);
  }

 private:
  std::mt19937_64 engine_;
};

// Distinct lowercase consonant-vowel words for distinct i.
std::string pseudo_word(std::size_t i);

// Zipf(1) sampler over ranks [0, n).
class Zipf {
 public:
  explicit Zipf(std::size_t n);
  std::size_t sample(Rng &rng) const;

 private:
  std::vector<double> cdf_;
};

struct NeedCorpus {
  std::vector<TokenSentence> sentences;
  PosLexicon lexicon;
  std::vector<std::string> targets;  // the two engineered resource nouns
};

// Sentences in which `targets` co-occur with "needs" and "supplies" far above
// chance, mixed with Zipfian filler.
NeedCorpus make_need_corpus(std::size_t n_sentences, std::uint64_t seed);

// JSONL tweets with ids "t<N>", average `avg_tokens` tokens, some URLs,
// hashtags and mentions.
void write_synthetic_tweets(std::ostream &out, std::size_t n,
                            std::uint64_t seed, int avg_tokens = 20);

// Random valid dependency trees of 5..30 tokens; roughly a quarter carry a
// rule-1 need clause.
std::vector<DepSentence> random_dep_sentences(std::size_t n,
                                              std::uint64_t seed);

}  // namespace needstack::testing

#endif  // NEEDSTACK_TESTS_SYNTH_H_
