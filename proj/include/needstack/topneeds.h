#ifndef NEEDSTACK_TOPNEEDS_H_
#define NEEDSTACK_TOPNEEDS_H_

// Top-needs ranking: nouns closest to the seed embeddings, with nounhood
// decided by each token's majority POS tag.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "needstack/embeddings.h"

namespace needstack {

class PosLexicon {
 public:
  // Tokens are lowercased; tags are stored as given.
  void add(std::string_view token, std::string_view tag,
           std::uint64_t count = 1);

  // Tag histogram of a token, or nullptr when unseen. Lookup lowercases.
  const std::map<std::string, std::uint64_t> *histogram(
      std::string_view token) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::unordered_map<std::string, std::map<std::string, std::uint64_t>>
      &entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::string, std::map<std::string, std::uint64_t>>
      entries_;
};

// Throws DataError on an empty stream.
PosLexicon build_pos_lexicon(
    const std::vector<std::pair<std::string, std::string>> &tagged);

// Token/tag pairs from CoNLL-U (FORM and UPOS columns; comment, range and
// empty-node lines skipped). Throws ParseError for token lines without ten
// columns.
std::vector<std::pair<std::string, std::string>> read_conllu_tags(
    std::istream &in);

// Reads a lexicon from CoNLL-U (".conllu" extension) or from TSV lines of
// "token<TAB>tag" or "token<TAB>tag<TAB>count". Throws DataError if the file
// holds no tagged tokens.
PosLexicon load_pos_lexicon(const std::string &path);
PosLexicon load_pos_lexicon_tsv(std::istream &in);

// Writes "token<TAB>tag<TAB>count" lines, sorted.
void save_pos_lexicon(std::ostream &out, const PosLexicon &lexicon);

// NOUN and PROPN, plus the Penn noun tags NN, NNS, NNP and NNPS.
bool is_noun_tag(std::string_view tag);

// A term is a noun iff a noun tag reaches the maximum count in its
// histogram. Hyphen-joined phrases are judged by their final component.
// Unknown terms are not nouns.
bool is_noun(const PosLexicon &lexicon, std::string_view term);

enum class SeedMerge { kMax, kMean };
SeedMerge parse_seed_merge(std::string_view name);

// Surface forms dropped when exclude_need_forms is set.
const std::vector<std::string> &need_word_forms();

struct RankConfig {
  std::vector<std::string> seeds = {"needs", "supplies"};
  std::size_t k = 100;
  SeedMerge merge = SeedMerge::kMax;
  // Off by default, so forms like "needing" can still rank.
  bool exclude_need_forms = false;
};

struct RankedItem {
  std::string term;
  double score = 0.0;
};

struct RankedResourceList {
  std::vector<RankedItem> items;
  std::vector<std::string> seeds;
  std::size_t k = 0;
};

// score(t) = max (or mean) over seeds of cos(v_t, v_seed), over nouns only.
// Seeds are never returned. Ties break by vocabulary index. Throws DataError
// naming the first seed missing from the vocabulary.
RankedResourceList rank_top_needs(const EmbeddingModel &model,
                                  const PosLexicon &lexicon,
                                  const RankConfig &config);

// Same ranking with every term treated as a noun, for runs without tagged
// input.
RankedResourceList rank_top_needs(const EmbeddingModel &model,
                                  const RankConfig &config);

// "rank<TAB>term<TAB>score" rows, rank from 1, score with 6 decimals.
void write_ranked(std::ostream &out, const RankedResourceList &list);

// Reads the format written by write_ranked. Rows must be in rank order.
RankedResourceList read_ranked(std::istream &in);
RankedResourceList read_ranked(const std::string &path);

}  // namespace needstack

#endif  // NEEDSTACK_TOPNEEDS_H_
