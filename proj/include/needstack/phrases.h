#ifndef NEEDSTACK_PHRASES_H_
#define NEEDSTACK_PHRASES_H_

// Collocation mining and phrase annotation. Salient adjacent token pairs are
// found with a rescaled NPMI score and merged into hyphen-joined tokens;
// repeated passes grow longer phrases.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "needstack/corpus.h"

namespace needstack {

struct PhraseConfig {
  double threshold = 0.8;
  std::int64_t min_pair_count = 5;
  int max_passes = 3;

  // Throws ConfigError.
  void validate() const;
};

struct PhraseEntry {
  std::vector<std::string> components;
  double score = 0.0;
};

// Set of phrases (2+ components) with salience scores in [0, 1], indexed by
// a token trie for longest-match lookup.
class PhraseTable {
 public:
  // Adds or overwrites a phrase. Throws DataError for fewer than two
  // components or a score outside [0, 1].
  void insert(std::vector<std::string> components, double score);

  std::optional<double> score(const std::vector<std::string> &components) const;
  bool contains(const std::vector<std::string> &components) const {
    return score(components).has_value();
  }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Score descending, ties by component sequence ascending.
  std::vector<PhraseEntry> sorted_entries() const;

  // Number of tokens covered by the longest phrase that starts at
  // tokens[0], or 0 when none does.
  std::size_t longest_match(std::span<const std::string> tokens) const;

 private:
  struct Node {
    std::unordered_map<std::string, std::uint32_t> next;
    bool terminal = false;
  };

  std::map<std::vector<std::string>, double> entries_;
  std::vector<Node> trie_{1};
};

inline constexpr char kPhraseJoiner = '-';

std::string join_phrase(const std::vector<std::string> &components);

// Greedy left-to-right longest-match rewrite; merged phrases are joined with
// '-'.
std::vector<std::string> annotate_phrases(std::span<const std::string> tokens,
                                          const PhraseTable &table);

// Adjacent-pair statistics over interned token ids. Left and right marginals
// count how often a unit opens or closes a pair, so the pair probabilities
// form a proper joint distribution. merge() is associative and commutative,
// so shards can be counted independently.
class PairCounts {
 public:
  void add_sentence(std::span<const std::uint32_t> units);
  void merge(const PairCounts &other);

  std::uint64_t total() const { return total_; }
  std::uint64_t pair(std::uint32_t left, std::uint32_t right) const;
  std::uint64_t left(std::uint32_t unit) const;
  std::uint64_t right(std::uint32_t unit) const;

  const std::unordered_map<std::uint64_t, std::uint64_t> &pairs() const {
    return pairs_;
  }

  static std::uint64_t key(std::uint32_t l, std::uint32_t r) {
    return (static_cast<std::uint64_t>(l) << 32) | r;
  }

  bool operator==(const PairCounts &other) const = default;

 private:
  std::unordered_map<std::uint64_t, std::uint64_t> pairs_;
  std::unordered_map<std::uint32_t, std::uint64_t> left_;
  std::unordered_map<std::uint32_t, std::uint64_t> right_;
  std::uint64_t total_ = 0;
};

// npmi = ln(p(x,y) / (p(x) p(y))) / -ln p(x,y), rescaled to (npmi + 1) / 2.
// A pair that accounts for every observation scores 1.
double rescaled_npmi(std::uint64_t pair_count, std::uint64_t left_count,
                     std::uint64_t right_count, std::uint64_t total);

// Throws DataError("empty corpus") when the corpus has no sentences.
PhraseTable mine_phrases(std::span<const TokenSentence> corpus,
                         const PhraseConfig &config);

// TSV: "component1 component2 ...<TAB>score", score descending.
void save_phrase_table(std::ostream &out, const PhraseTable &table);
void save_phrase_table(const std::string &path, const PhraseTable &table);
PhraseTable load_phrase_table(std::istream &in);
PhraseTable load_phrase_table(const std::string &path);

}  // namespace needstack

#endif  // NEEDSTACK_PHRASES_H_
