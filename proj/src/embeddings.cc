#include "needstack/embeddings.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include "needstack/error.h"
#include "needstack/sgns.h"
#include "needstack/text_util.h"

namespace needstack {

std::optional<std::uint32_t> Vocabulary::find(std::string_view term) const {
  auto it = index.find(std::string(term));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::reindex() {
  index.clear();
  index.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    index.emplace(terms[i], static_cast<std::uint32_t>(i));
  }
}

void TrainConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (negative < 1) throw ConfigError("negative must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (min_count < 1) throw ConfigError("min-count must be >= 1");
  if (!(subsample >= 0.0)) throw ConfigError("subsample must be >= 0");
  if (!(initial_lr > 0.0 && initial_lr < 1.0)) {
    throw ConfigError("lr must be in (0, 1)");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

std::span<const float> EmbeddingModel::vector_of(std::string_view term) const {
  auto i = vocab.find(term);
  if (!i) throw DataError("term '" + std::string(term) + "' not in vocabulary");
  return input_row(*i);
}

namespace {

const std::vector<std::string> &tokens_of(const std::vector<std::string> &s) {
  return s;
}
const std::vector<std::string> &tokens_of(const TokenSentence &s) {
  return s.tokens;
}

template <typename Sentences>
Vocabulary build_vocab_impl(const Sentences &sentences,
                            std::int64_t min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto &s : sentences) {
    for (const std::string &t : tokens_of(s)) ++counts[t];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto &[term, c] : counts) {
    if (static_cast<std::int64_t>(c) >= min_count) kept.emplace_back(term, c);
  }
  if (kept.empty()) throw DataError("vocabulary empty");
  std::sort(kept.begin(), kept.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  v.terms.reserve(kept.size());
  v.counts.reserve(kept.size());
  for (auto &[term, c] : kept) {
    v.terms.push_back(std::move(term));
    v.counts.push_back(c);
  }
  v.reindex();
  return v;
}

// The reference word2vec generator, so seeded runs are portable.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 25214903917ULL + 11;
    return state_;
  }

 private:
  std::uint64_t state_;
};

constexpr std::size_t kNegativeTableSize = 10'000'000;

std::vector<std::uint32_t> build_negative_table(const Vocabulary &vocab) {
  std::vector<std::uint32_t> table(kNegativeTableSize);
  double total = 0.0;
  for (std::uint64_t c : vocab.counts) total += std::pow(double(c), 0.75);
  std::size_t w = 0;
  double cumulative = std::pow(double(vocab.counts[0]), 0.75) / total;
  for (std::size_t a = 0; a < kNegativeTableSize; ++a) {
    table[a] = static_cast<std::uint32_t>(w);
    if (double(a) / kNegativeTableSize > cumulative &&
        w + 1 < vocab.size()) {
      ++w;
      cumulative += std::pow(double(vocab.counts[w]), 0.75) / total;
    }
  }
  return table;
}

// The corpus as flat vocabulary ids; out-of-vocabulary tokens are dropped.
struct IdCorpus {
  std::vector<std::uint32_t> ids;
  std::vector<std::size_t> offsets{0};  // sentence i is [offsets[i], offsets[i+1])
  std::size_t sentences() const { return offsets.size() - 1; }
};

template <typename Sentences>
IdCorpus to_ids(const Sentences &sentences, const Vocabulary &vocab) {
  IdCorpus c;
  for (const auto &s : sentences) {
    for (const std::string &t : tokens_of(s)) {
      auto it = vocab.index.find(t);
      if (it != vocab.index.end()) c.ids.push_back(it->second);
    }
    c.offsets.push_back(c.ids.size());
  }
  return c;
}

class Trainer {
 public:
  Trainer(const IdCorpus &corpus, EmbeddingModel &model)
      : corpus_(corpus),
        model_(model),
        config_(model.config),
        negatives_(build_negative_table(model.vocab)) {
    train_words_ = corpus.ids.size();
    if (config_.subsample > 0.0) {
      keep_prob_.resize(model.vocab.size());
      const double threshold = config_.subsample;
      for (std::size_t w = 0; w < model.vocab.size(); ++w) {
        double f = double(model.vocab.counts[w]) / double(train_words_);
        keep_prob_[w] = f > threshold ? std::sqrt(threshold / f) : 1.0;
      }
    }
  }

  void run() {
    const int workers = config_.workers;
    if (workers == 1) {
      work(0, 0, corpus_.sentences());
      return;
    }
    std::vector<std::thread> threads;
    const std::size_t n = corpus_.sentences();
    for (int t = 0; t < workers; ++t) {
      std::size_t begin = n * t / workers;
      std::size_t end = n * (t + 1) / workers;
      threads.emplace_back([this, t, begin, end] { work(t, begin, end); });
    }
    for (auto &th : threads) th.join();
  }

 private:
  float current_lr() const {
    const double total = double(config_.epochs) * double(train_words_) + 1.0;
    double frac = 1.0 - double(words_done_.load(std::memory_order_relaxed)) /
                            total;
    return static_cast<float>(config_.initial_lr * std::max(frac, 1e-4));
  }

  void work(int worker, std::size_t begin, std::size_t end) {
    const std::size_t dim = static_cast<std::size_t>(config_.dim);
    Lcg rng(config_.seed + static_cast<std::uint64_t>(worker));
    std::vector<float> scratch(dim);
    std::vector<std::uint32_t> kept;
    std::vector<std::span<float>> outputs;
    float *in = model_.input_vectors.data();
    float *out = model_.output_vectors.data();

    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
      for (std::size_t s = begin; s < end; ++s) {
        const std::size_t lo = corpus_.offsets[s], hi = corpus_.offsets[s + 1];
        const float lr = current_lr();
        kept.clear();
        for (std::size_t i = lo; i < hi; ++i) {
          std::uint32_t w = corpus_.ids[i];
          if (!keep_prob_.empty()) {
            double r = double(rng.next() & 0xFFFF) / 65536.0;
            if (keep_prob_[w] < r) continue;
          }
          kept.push_back(w);
        }
        words_done_.fetch_add(hi - lo, std::memory_order_relaxed);

        const auto len = static_cast<std::ptrdiff_t>(kept.size());
        for (std::ptrdiff_t pos = 0; pos < len; ++pos) {
          const std::uint32_t center = kept[pos];
          const auto radius = static_cast<std::ptrdiff_t>(
              config_.window - rng.next() % config_.window);
          const std::ptrdiff_t from = std::max<std::ptrdiff_t>(0, pos - radius);
          const std::ptrdiff_t to = std::min(len - 1, pos + radius);
          std::span<float> center_row(in + center * dim, dim);
          for (std::ptrdiff_t c = from; c <= to; ++c) {
            if (c == pos) continue;
            const std::uint32_t context = kept[c];
            outputs.clear();
            outputs.emplace_back(out + context * dim, dim);
            for (int k = 0; k < config_.negative; ++k) {
              std::uint32_t neg =
                  negatives_[(rng.next() >> 16) % negatives_.size()];
              if (neg == context) continue;
              outputs.emplace_back(out + neg * dim, dim);
            }
            sgns_update<float>(center_row, outputs, lr, sigmoid_, scratch);
          }
        }
      }
    }
  }

  const IdCorpus &corpus_;
  EmbeddingModel &model_;
  const TrainConfig &config_;
  std::vector<std::uint32_t> negatives_;
  std::vector<double> keep_prob_;
  std::size_t train_words_ = 0;
  std::atomic<std::uint64_t> words_done_{0};
  SigmoidTable sigmoid_;
};

template <typename Sentences>
EmbeddingModel train_impl(const Sentences &sentences,
                          const TrainConfig &config) {
  config.validate();
  EmbeddingModel model;
  model.config = config;
  model.vocab = build_vocab_impl(sentences, config.min_count);
  const std::size_t dim = static_cast<std::size_t>(config.dim);
  const std::size_t n = model.vocab.size() * dim;
  model.input_vectors.resize(n);
  model.output_vectors.assign(n, 0.0f);
  Lcg init(config.seed);
  for (float &x : model.input_vectors) {
    x = static_cast<float>((double(init.next() & 0xFFFF) / 65536.0 - 0.5) /
                           double(dim));
  }
  IdCorpus corpus = to_ids(sentences, model.vocab);
  Trainer(corpus, model).run();
  return model;
}

}  // namespace

Vocabulary build_vocab(const SentenceList &sentences, std::int64_t min_count) {
  return build_vocab_impl(sentences, min_count);
}

Vocabulary build_vocab(std::span<const TokenSentence> sentences,
                       std::int64_t min_count) {
  return build_vocab_impl(sentences, min_count);
}

EmbeddingModel train_sgns(const SentenceList &sentences,
                          const TrainConfig &config) {
  return train_impl(sentences, config);
}

EmbeddingModel train_sgns(std::span<const TokenSentence> sentences,
                          const TrainConfig &config) {
  return train_impl(sentences, config);
}

// ---------------------------------------------------------------------------
// Similarity search

double cosine(std::span<const float> a, std::span<const float> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    dot += double(a[i]) * double(b[i]);
    na += double(a[i]) * double(a[i]);
    nb += double(b[i]) * double(b[i]);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<Neighbor> nearest_neighbors(
    const EmbeddingModel &model, std::span<const float> seed_vector,
    std::size_t k, const TermFilter &filter,
    const std::unordered_set<std::string> &exclude) {
  double norm = 0.0;
  for (float x : seed_vector) norm += double(x) * double(x);
  if (!(norm > 0.0)) throw DataError("degenerate seed");
  if (seed_vector.size() != static_cast<std::size_t>(model.dim())) {
    throw DataError("seed vector has the wrong dimension");
  }
  if (k == 0) return {};

  struct Scored {
    double cos;
    std::uint32_t index;
  };
  auto better = [](const Scored &a, const Scored &b) {
    if (a.cos != b.cos) return a.cos > b.cos;
    return a.index < b.index;
  };
  // Min-heap (worst on top) of the best k seen so far.
  std::vector<Scored> heap;
  heap.reserve(k + 1);
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    const std::string &term = model.vocab.terms[i];
    if (!exclude.empty() && exclude.count(term)) continue;
    if (filter && !filter(term)) continue;
    Scored s{cosine(model.input_row(i), seed_vector),
             static_cast<std::uint32_t>(i)};
    if (heap.size() < k) {
      heap.push_back(s);
      std::push_heap(heap.begin(), heap.end(), better);
    } else if (better(s, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), better);
      heap.back() = s;
      std::push_heap(heap.begin(), heap.end(), better);
    }
  }
  std::sort_heap(heap.begin(), heap.end(), better);
  std::vector<Neighbor> out;
  out.reserve(heap.size());
  for (const Scored &s : heap) {
    out.push_back({s.index, model.vocab.terms[s.index], s.cos});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr char kMagic[4] = {'N', 'S', 'T', 'K'};

template <typename U>
void put_le(std::ostream &out, U v) {
  char buf[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  }
  out.write(buf, sizeof(U));
}

template <typename U>
U get_le(std::istream &in) {
  unsigned char buf[sizeof(U)];
  if (!in.read(reinterpret_cast<char *>(buf), sizeof(U))) {
    throw ParseError("model file truncated");
  }
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= U(buf[i]) << (8 * i);
  return v;
}

void put_floats(std::ostream &out, const std::vector<float> &m) {
  for (float f : m) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof bits);
    put_le(out, bits);
  }
}

void get_floats(std::istream &in, std::vector<float> &m) {
  for (float &f : m) {
    std::uint32_t bits = get_le<std::uint32_t>(in);
    std::memcpy(&f, &bits, sizeof f);
    if (!std::isfinite(f)) throw ParseError("model file has non-finite value");
  }
}

}  // namespace

void save_model(std::ostream &out, const EmbeddingModel &model) {
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, kModelFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(model.dim()));
  put_le<std::uint64_t>(out, model.vocab.size());
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    const std::string &t = model.vocab.terms[i];
    out.write(t.data(), static_cast<std::streamsize>(t.size()));
    out.put('\0');
    put_le<std::uint64_t>(out, model.vocab.counts[i]);
  }
  put_floats(out, model.input_vectors);
  put_floats(out, model.output_vectors);
}

void save_model(const std::string &path, const EmbeddingModel &model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model '" + path + "'");
  save_model(out, model);
  if (!out) throw IoError("write failed for model '" + path + "'");
}

EmbeddingModel load_model(std::istream &in) {
  char magic[4];
  if (!in.read(magic, sizeof magic) ||
      std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw ParseError("not a model file (bad magic)");
  }
  auto version = get_le<std::uint32_t>(in);
  if (version != kModelFormatVersion) {
    throw ParseError("unsupported model version " + std::to_string(version));
  }
  EmbeddingModel model;
  auto dim = get_le<std::uint32_t>(in);
  auto size = get_le<std::uint64_t>(in);
  if (dim == 0 || dim > (1u << 20)) throw ParseError("bad model dimension");
  model.config.dim = static_cast<int>(dim);
  for (std::uint64_t i = 0; i < size; ++i) {
    std::string term;
    if (!std::getline(in, term, '\0')) throw ParseError("model file truncated");
    model.vocab.terms.push_back(std::move(term));
    model.vocab.counts.push_back(get_le<std::uint64_t>(in));
  }
  model.vocab.reindex();
  if (model.vocab.index.size() != model.vocab.size()) {
    throw ParseError("model vocabulary has duplicate terms");
  }
  model.input_vectors.resize(size * dim);
  model.output_vectors.resize(size * dim);
  get_floats(in, model.input_vectors);
  get_floats(in, model.output_vectors);
  return model;
}

EmbeddingModel load_model(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model '" + path + "'");
  return load_model(in);
}

void export_text(std::ostream &out, const EmbeddingModel &model) {
  char buf[32];
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    out << model.vocab.terms[i];
    for (float x : model.input_row(i)) {
      auto res = std::to_chars(buf, buf + sizeof buf, x);
      out << ' ' << std::string_view(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace needstack
