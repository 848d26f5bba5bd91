#include "needstack/evaluation.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "needstack/error.h"
#include "needstack/porter_stemmer.h"
#include "needstack/text_util.h"

namespace needstack {

std::string normalize_term(std::string_view term) {
  std::string lowered = to_lower_ascii(term);
  std::replace(lowered.begin(), lowered.end(), '-', ' ');
  std::string out = join(split_whitespace(lowered), " ");
  if (out.size() > 1 && out[0] == '#') out.erase(0, 1);
  return out;
}

ResourceLexicon load_resource_lexicon(std::istream &in, std::string name) {
  ResourceLexicon lex{std::move(name), {}};
  std::string line;
  while (read_line(in, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    lex.terms.insert(normalize_term(t));
  }
  if (lex.terms.empty()) {
    throw DataError("resource lexicon '" + lex.name + "' is empty");
  }
  return lex;
}

ResourceLexicon load_resource_lexicon(const std::string &path,
                                      std::string name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open resource lexicon '" + path + "'");
  if (name.empty()) {
    std::size_t slash = path.find_last_of('/');
    name = path.substr(slash == std::string::npos ? 0 : slash + 1);
    std::size_t dot = name.find('.');
    if (dot != std::string::npos && dot > 0) name.resize(dot);
  }
  return load_resource_lexicon(in, std::move(name));
}

// ---------------------------------------------------------------------------
// EvalReport

double EvalReport::metric(std::string_view name) const {
  for (const auto &[n, v] : metrics) {
    if (n == name) return v;
  }
  throw std::out_of_range("no metric named '" + std::string(name) + "'");
}

void EvalReport::set(std::string name, double value) {
  for (auto &[n, v] : metrics) {
    if (n == name) {
      v = value;
      return;
    }
  }
  metrics.emplace_back(std::move(name), value);
}

void write_report_tsv(std::ostream &out, const EvalReport &report) {
  for (const auto &[n, v] : report.metrics) {
    out << n << '\t' << format_fixed(v, 6) << '\n';
  }
  for (const auto &[n, c] : report.counts) out << n << '\t' << c << '\n';
  for (const std::string &f : report.flags) out << "flag\t" << f << '\n';
}

void write_report_summary(std::ostream &out, const EvalReport &report) {
  std::size_t width = 0;
  for (const auto &[n, v] : report.metrics) width = std::max(width, n.size());
  for (const auto &[n, c] : report.counts) width = std::max(width, n.size());
  for (const auto &[n, v] : report.metrics) {
    out << "  " << n << std::string(width - n.size() + 2, ' ')
        << format_fixed(v, 4) << '\n';
  }
  for (const auto &[n, c] : report.counts) {
    out << "  " << n << std::string(width - n.size() + 2, ' ') << c << '\n';
  }
  for (const std::string &f : report.flags) out << "  note: " << f << '\n';
}

// ---------------------------------------------------------------------------
// Top-needs precision

EvalReport precision_at_k(const RankedResourceList &ranked,
                          const std::vector<ResourceLexicon> &lexicons,
                          const std::vector<std::size_t> &ks) {
  if (lexicons.empty()) throw DataError("no resource lexicons given");
  EvalReport report;
  std::vector<std::string> norm;
  norm.reserve(ranked.items.size());
  for (const RankedItem &item : ranked.items) {
    norm.push_back(normalize_term(item.term));
  }
  for (std::size_t k : ks) {
    if (k == 0) throw DataError("k must be >= 1");
    if (k > norm.size()) {
      throw DataError("rank list shorter than k (k = " + std::to_string(k) +
                      ", " + std::to_string(norm.size()) + " items)");
    }
    std::size_t union_hits = 0;
    std::vector<std::size_t> hits(lexicons.size(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      bool any = false;
      for (std::size_t l = 0; l < lexicons.size(); ++l) {
        if (lexicons[l].terms.count(norm[i])) {
          ++hits[l];
          any = true;
        }
      }
      if (any) ++union_hits;
    }
    const std::string prefix = "precision@" + std::to_string(k) + "/";
    for (std::size_t l = 0; l < lexicons.size(); ++l) {
      report.set(prefix + lexicons[l].name, double(hits[l]) / double(k));
      report.counts["hits@" + std::to_string(k) + "/" + lexicons[l].name] =
          hits[l];
    }
    report.set(prefix + "union", double(union_hits) / double(k));
    report.counts["hits@" + std::to_string(k) + "/union"] = union_hits;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sentence labels

Labels load_labels(std::istream &in) {
  Labels labels;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2 || (cols[1] != "0" && cols[1] != "1")) {
      throw ParseError("expected 'sent_id<TAB>0|1'", line_no);
    }
    if (!labels.emplace(cols[0], cols[1] == "1").second) {
      throw ParseError("duplicate id '" + cols[0] + "'", line_no);
    }
  }
  return labels;
}

Labels load_labels(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open label file '" + path + "'");
  return load_labels(in);
}

namespace {

void require_same_ids(const Labels &a, const Labels &b, std::string_view an,
                      std::string_view bn) {
  std::vector<std::string> only_a, only_b;
  for (const auto &[id, v] : a) {
    if (!b.count(id)) only_a.push_back(id);
  }
  for (const auto &[id, v] : b) {
    if (!a.count(id)) only_b.push_back(id);
  }
  if (only_a.empty() && only_b.empty()) return;
  auto list = [](const std::vector<std::string> &ids) {
    constexpr std::size_t kShow = 10;
    std::vector<std::string> shown(ids.begin(),
                                   ids.begin() + std::min(ids.size(), kShow));
    std::string s = join(shown, ", ");
    if (ids.size() > kShow) {
      s += ", ... (" + std::to_string(ids.size()) + " total)";
    }
    return s;
  };
  std::string msg = "id sets differ;";
  if (!only_a.empty()) {
    msg += " missing from " + std::string(bn) + ": " + list(only_a) + ";";
  }
  if (!only_b.empty()) {
    msg += " missing from " + std::string(an) + ": " + list(only_b) + ";";
  }
  msg.pop_back();
  throw DataError(msg);
}

}  // namespace

EvalReport prf1(const Labels &predicted, const Labels &gold) {
  require_same_ids(predicted, gold, "predicted", "gold");
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto &[id, p] : predicted) {
    bool g = gold.at(id);
    if (p && g) ++tp;
    else if (p && !g) ++fp;
    else if (!p && g) ++fn;
    else ++tn;
  }
  EvalReport report;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  if (tp + fp > 0) {
    precision = double(tp) / double(tp + fp);
  } else {
    report.flags.push_back("precision undefined (no predicted positives)");
  }
  if (tp + fn > 0) {
    recall = double(tp) / double(tp + fn);
  } else {
    report.flags.push_back("recall undefined (no gold positives)");
  }
  if (precision + recall > 0.0) {
    f1 = 2.0 * precision * recall / (precision + recall);
  } else {
    report.flags.push_back("f1 undefined (precision + recall = 0)");
  }
  report.set("precision", precision);
  report.set("recall", recall);
  report.set("f1", f1);
  report.counts = {{"tp", tp}, {"fp", fp}, {"fn", fn}, {"tn", tn}};
  return report;
}

KappaResult cohens_kappa(const Labels &a, const Labels &b) {
  require_same_ids(a, b, "first annotator", "second annotator");
  if (a.empty()) throw DataError("kappa needs at least one item");
  double n = double(a.size());
  std::uint64_t agree = 0, a_yes = 0, b_yes = 0;
  for (const auto &[id, va] : a) {
    bool vb = b.at(id);
    if (va == vb) ++agree;
    if (va) ++a_yes;
    if (vb) ++b_yes;
  }
  KappaResult r;
  r.observed = double(agree) / n;
  double pa = double(a_yes) / n, pb = double(b_yes) / n;
  r.expected = pa * pb + (1.0 - pa) * (1.0 - pb);
  if (r.expected >= 1.0) {
    r.degenerate = true;
    r.kappa = r.observed >= 1.0 ? 1.0 : 0.0;
  } else {
    r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Baseline

const std::unordered_set<std::string> &stopwords() {
  static const std::unordered_set<std::string> kWords = {
      "i",       "me",       "my",      "myself",  "we",         "our",
      "ours",    "ourselves", "you",    "your",    "yours",      "yourself",
      "yourselves", "he",    "him",     "his",     "himself",    "she",
      "her",     "hers",     "herself", "it",      "its",        "itself",
      "they",    "them",     "their",   "theirs",  "themselves", "what",
      "which",   "who",      "whom",    "this",    "that",       "these",
      "those",   "am",       "is",      "are",     "was",        "were",
      "be",      "been",     "being",   "have",    "has",        "had",
      "having",  "do",       "does",    "did",     "doing",      "a",
      "an",      "the",      "and",     "but",     "if",         "or",
      "because", "as",       "until",   "while",   "of",         "at",
      "by",      "for",      "with",    "about",   "against",    "between",
      "into",    "through",  "during",  "before",  "after",      "above",
      "below",   "to",       "from",    "up",      "down",       "in",
      "out",     "on",       "off",     "over",    "under",      "again",
      "further", "then",     "once",    "here",    "there",      "when",
      "where",   "why",      "how",     "all",     "any",        "both",
      "each",    "few",      "more",    "most",    "other",      "some",
      "such",    "no",       "nor",     "not",     "only",       "own",
      "same",    "so",       "than",    "too",     "very",       "s",
      "t",       "can",      "will",    "just",    "don",        "should",
      "now",     "d",        "ll",      "m",       "o",          "re",
      "ve",      "y",        "ain",     "aren",    "couldn",     "didn",
      "doesn",   "hadn",     "hasn",    "haven",   "isn",        "ma",
      "mightn",  "mustn",    "needn",   "shan",    "shouldn",    "wasn",
      "weren",   "won",      "wouldn",  "would",   "could",      "also",
      "us",      "rt",       "amp",     "via",     "get",        "got",
      "im",      "u",        "ur",      "let",     "may",        "might",
      "must",    "shall"};
  return kWords;
}

std::vector<std::string> baseline_preprocess(std::string_view text) {
  std::vector<std::string> out;
  const auto &stop = stopwords();
  for (const std::string &tok : tokenize(text)) {
    if (tok == kUrlToken || tok[0] == '@') continue;
    std::string cleaned = tok;
    for (char &c : cleaned) {
      bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  static_cast<unsigned char>(c) >= 0x80;
      if (!keep) c = ' ';
    }
    for (const std::string &w : split_whitespace(cleaned)) {
      if (stop.count(w)) continue;
      out.push_back(porter_stem(w));
    }
  }
  return out;
}

VectorAggregate parse_vector_aggregate(std::string_view name) {
  if (name == "mean") return VectorAggregate::kMean;
  if (name == "sum") return VectorAggregate::kSum;
  throw ConfigError("aggregate must be 'mean' or 'sum', got '" +
                    std::string(name) + "'");
}

std::vector<bool> select_top(std::span<const double> scores,
                             std::size_t cutoff) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  std::vector<bool> positive(scores.size(), false);
  for (std::size_t i = 0; i < std::min(cutoff, order.size()); ++i) {
    positive[order[i]] = true;
  }
  return positive;
}

std::vector<BaselineScore> baseline_rank(std::span<const TweetRecord> tweets,
                                         const EmbeddingModel &model,
                                         const BaselineConfig &config) {
  if (config.seeds.empty()) throw DataError("no baseline seed terms given");
  std::vector<std::span<const float>> seeds;
  for (const std::string &s : config.seeds) {
    auto id = model.vocab.find(s);
    if (!id) throw DataError("baseline seed '" + s + "' not in vocabulary");
    seeds.push_back(model.input_row(*id));
  }
  const std::size_t dim = static_cast<std::size_t>(model.dim());
  std::vector<BaselineScore> out;
  std::vector<double> scores;
  out.reserve(tweets.size());
  scores.reserve(tweets.size());
  std::vector<float> acc(dim);
  for (const TweetRecord &tweet : tweets) {
    std::fill(acc.begin(), acc.end(), 0.0f);
    std::size_t used = 0;
    for (const std::string &tok : baseline_preprocess(tweet.text)) {
      auto id = model.vocab.find(tok);
      if (!id) continue;
      std::span<const float> row = model.input_row(*id);
      for (std::size_t d = 0; d < dim; ++d) acc[d] += row[d];
      ++used;
    }
    double score = -1.0;
    if (used > 0) {
      if (config.aggregate == VectorAggregate::kMean) {
        for (float &x : acc) x /= static_cast<float>(used);
      }
      score = config.merge == SeedMerge::kMax ? -1.0 : 0.0;
      for (std::span<const float> seed : seeds) {
        double c = cosine(acc, seed);
        score = config.merge == SeedMerge::kMax ? std::max(score, c)
                                                : score + c;
      }
      if (config.merge == SeedMerge::kMean) score /= double(seeds.size());
    }
    out.push_back({tweet.id, score, false});
    scores.push_back(score);
  }
  std::vector<bool> positive = select_top(scores, config.cutoff);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].positive = positive[i];
  return out;
}

}  // namespace needstack
