#ifndef NEEDSTACK_EVALUATION_H_
#define NEEDSTACK_EVALUATION_H_

// Metrics for both tasks: precision@k of a ranked resource list against
// reference lexicons, P/R/F1 of sentence labels, Cohen's kappa, and the
// cosine-ranking need-tweet baseline.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "needstack/corpus.h"
#include "needstack/embeddings.h"
#include "needstack/topneeds.h"

namespace needstack {

// Lowercase, '-' -> ' ', whitespace runs collapsed, trimmed, a leading
// hashtag '#' dropped.
std::string normalize_term(std::string_view term);

struct ResourceLexicon {
  std::string name;
  std::unordered_set<std::string> terms;  // normalized

  bool contains(std::string_view term) const {
    return terms.count(normalize_term(term)) > 0;
  }
};

// One term per line, '#' comments. Throws DataError if no terms remain.
ResourceLexicon load_resource_lexicon(std::istream &in, std::string name);
ResourceLexicon load_resource_lexicon(const std::string &path,
                                      std::string name = {});

struct EvalReport {
  // Insertion-ordered metric values.
  std::vector<std::pair<std::string, double>> metrics;
  std::map<std::string, std::uint64_t> counts;
  // Notes such as zero denominators.
  std::vector<std::string> flags;

  // Throws std::out_of_range for an unknown name.
  double metric(std::string_view name) const;
  void set(std::string name, double value);
};

// TSV "name<TAB>value" for metrics, then "name<TAB>count", then
// "flag<TAB>text".
void write_report_tsv(std::ostream &out, const EvalReport &report);
void write_report_summary(std::ostream &out, const EvalReport &report);

// For each k and each lexicon plus their union, |top-k ∩ lexicon| / k under
// normalize_term. Metric names: "precision@<k>/<lexicon>" and
// "precision@<k>/union". Throws DataError("rank list shorter than k") and
// DataError for k == 0.
EvalReport precision_at_k(const RankedResourceList &ranked,
                          const std::vector<ResourceLexicon> &lexicons,
                          const std::vector<std::size_t> &ks);

using Labels = std::map<std::string, bool>;

// "sent_id<TAB>0|1" lines. Throws ParseError for duplicates or bad values.
Labels load_labels(std::istream &in);
Labels load_labels(const std::string &path);

// P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R); zero denominators give 0
// and a flag. Throws DataError listing ids present on one side only.
EvalReport prf1(const Labels &predicted, const Labels &gold);

struct KappaResult {
  double kappa = 0.0;
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
  bool degenerate = false;  // p_e == 1
};

// Two-class Cohen's kappa. Throws DataError on id mismatch or no items.
KappaResult cohens_kappa(const Labels &a, const Labels &b);

// Bundled 170-word English stopword list (apostrophe-free forms).
const std::unordered_set<std::string> &stopwords();

// Lowercase, drop URLs and @mentions, split on punctuation, drop stopwords,
// Porter-stem. Hashtags keep their word.
std::vector<std::string> baseline_preprocess(std::string_view text);

enum class VectorAggregate { kMean, kSum };
VectorAggregate parse_vector_aggregate(std::string_view name);

struct BaselineConfig {
  std::size_t cutoff = 250;
  std::vector<std::string> seeds = {"need", "requir"};
  VectorAggregate aggregate = VectorAggregate::kMean;
  SeedMerge merge = SeedMerge::kMax;
};

struct BaselineScore {
  std::string id;
  double score = 0.0;
  bool positive = false;
};

// Indices of the `cutoff` highest scores are marked true; equal scores keep
// input order.
std::vector<bool> select_top(std::span<const double> scores,
                             std::size_t cutoff);

// Scores each tweet by the cosine of its aggregated token vector to the seed
// vectors (tweets without in-vocabulary tokens score -1) and labels the
// `cutoff` best positive. Output is in input order. Throws DataError when a
// seed is missing from the vocabulary.
std::vector<BaselineScore> baseline_rank(std::span<const TweetRecord> tweets,
                                         const EmbeddingModel &model,
                                         const BaselineConfig &config);

}  // namespace needstack

#endif  // NEEDSTACK_EVALUATION_H_
