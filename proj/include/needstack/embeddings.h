#ifndef NEEDSTACK_EMBEDDINGS_H_
#define NEEDSTACK_EMBEDDINGS_H_

// Skip-gram negative-sampling word embeddings and exact cosine search.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "needstack/corpus.h"

namespace needstack {

// Terms ordered by descending count, ties lexicographic.
struct Vocabulary {
  std::vector<std::string> terms;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t size() const { return terms.size(); }
  std::optional<std::uint32_t> find(std::string_view term) const;

  // Rebuilds `index` from `terms`.
  void reindex();
};

using SentenceList = std::vector<std::vector<std::string>>;

// Throws DataError("vocabulary empty") if no token reaches min_count, or if
// there are no sentences at all.
Vocabulary build_vocab(const SentenceList &sentences, std::int64_t min_count);
Vocabulary build_vocab(std::span<const TokenSentence> sentences,
                       std::int64_t min_count);

struct TrainConfig {
  int dim = 100;
  int window = 5;
  int negative = 5;
  int epochs = 5;
  std::int64_t min_count = 5;
  double subsample = 1e-4;
  double initial_lr = 0.025;
  std::uint64_t seed = 1;
  int workers = 1;

  // Throws ConfigError.
  void validate() const;
};

struct EmbeddingModel {
  Vocabulary vocab;
  // Row-major |V| x dim.
  std::vector<float> input_vectors;
  std::vector<float> output_vectors;
  TrainConfig config;

  int dim() const { return config.dim; }
  std::span<const float> input_row(std::size_t i) const {
    return {input_vectors.data() + i * dim(), static_cast<std::size_t>(dim())};
  }
  std::span<const float> output_row(std::size_t i) const {
    return {output_vectors.data() + i * dim(), static_cast<std::size_t>(dim())};
  }
  // Input vector of a term; throws DataError if the term is unknown.
  std::span<const float> vector_of(std::string_view term) const;
};

// Skip-gram with negative sampling. Bit-reproducible for workers == 1 and a
// fixed seed; workers > 1 trains with unsynchronized shared updates.
EmbeddingModel train_sgns(const SentenceList &sentences,
                          const TrainConfig &config);
EmbeddingModel train_sgns(std::span<const TokenSentence> sentences,
                          const TrainConfig &config);

// Cosine similarity accumulated in double. Zero vectors give 0.
double cosine(std::span<const float> a, std::span<const float> b);

struct Neighbor {
  std::uint32_t index = 0;
  std::string term;
  double cosine = 0.0;
};

using TermFilter = std::function<bool(std::string_view)>;

// Exhaustive search over input vectors: the k best terms passing `filter` and
// not in `exclude`, cosine descending, ties by vocabulary index. Throws
// DataError("degenerate seed") for a zero-norm seed vector.
std::vector<Neighbor> nearest_neighbors(
    const EmbeddingModel &model, std::span<const float> seed_vector,
    std::size_t k, const TermFilter &filter = {},
    const std::unordered_set<std::string> &exclude = {});

// Binary model: "NSTK", u32 version, u32 dim, u64 |V|, then per term the
// UTF-8 bytes, a NUL and a u64 count, then the input and output matrices as
// row-major little-endian float32. All integers little-endian.
inline constexpr std::uint32_t kModelFormatVersion = 1;
void save_model(std::ostream &out, const EmbeddingModel &model);
void save_model(const std::string &path, const EmbeddingModel &model);
EmbeddingModel load_model(std::istream &in);
EmbeddingModel load_model(const std::string &path);

// "term v1 v2 ... vdim" per line, input vectors.
void export_text(std::ostream &out, const EmbeddingModel &model);

}  // namespace needstack

#endif  // NEEDSTACK_EMBEDDINGS_H_
