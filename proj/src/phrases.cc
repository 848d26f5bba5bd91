#include "needstack/phrases.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "needstack/error.h"
#include "needstack/text_util.h"

namespace needstack {

void PhraseConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("threshold must be in [0, 1]");
  }
  if (min_pair_count < 1) throw ConfigError("min-pair-count must be >= 1");
  if (max_passes < 1) throw ConfigError("max-passes must be >= 1");
}

// ---------------------------------------------------------------------------
// PhraseTable

void PhraseTable::insert(std::vector<std::string> components, double score) {
  if (components.size() < 2) {
    throw DataError("a phrase needs at least two components");
  }
  if (!(score >= 0.0 && score <= 1.0)) {
    throw DataError("phrase score must be in [0, 1]");
  }
  std::uint32_t node = 0;
  for (const std::string &c : components) {
    auto it = trie_[node].next.find(c);
    if (it == trie_[node].next.end()) {
      auto child = static_cast<std::uint32_t>(trie_.size());
      trie_[node].next.emplace(c, child);
      trie_.emplace_back();
      node = child;
    } else {
      node = it->second;
    }
  }
  trie_[node].terminal = true;
  entries_[std::move(components)] = score;
}

std::optional<double> PhraseTable::score(
    const std::vector<std::string> &components) const {
  auto it = entries_.find(components);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<PhraseEntry> PhraseTable::sorted_entries() const {
  std::vector<PhraseEntry> out;
  out.reserve(entries_.size());
  for (const auto &[comps, s] : entries_) out.push_back({comps, s});
  // entries_ is already ordered by components, so a stable sort on score
  // leaves ties in component order.
  std::stable_sort(out.begin(), out.end(),
                   [](const PhraseEntry &a, const PhraseEntry &b) {
                     return a.score > b.score;
                   });
  return out;
}

std::size_t PhraseTable::longest_match(
    std::span<const std::string> tokens) const {
  std::uint32_t node = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = trie_[node].next.find(tokens[i]);
    if (it == trie_[node].next.end()) break;
    node = it->second;
    if (trie_[node].terminal) best = i + 1;
  }
  return best;
}

std::string join_phrase(const std::vector<std::string> &components) {
  return join(components, std::string_view(&kPhraseJoiner, 1));
}

std::vector<std::string> annotate_phrases(std::span<const std::string> tokens,
                                          const PhraseTable &table) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t len = table.empty() ? 0 : table.longest_match(tokens.subspan(i));
    if (len >= 2) {
      std::string merged = tokens[i];
      for (std::size_t j = i + 1; j < i + len; ++j) {
        merged += kPhraseJoiner;
        merged += tokens[j];
      }
      out.push_back(std::move(merged));
      i += len;
    } else {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pair statistics

void PairCounts::add_sentence(std::span<const std::uint32_t> units) {
  for (std::size_t i = 0; i + 1 < units.size(); ++i) {
    ++pairs_[key(units[i], units[i + 1])];
    ++left_[units[i]];
    ++right_[units[i + 1]];
    ++total_;
  }
}

void PairCounts::merge(const PairCounts &other) {
  for (const auto &[k, c] : other.pairs_) pairs_[k] += c;
  for (const auto &[u, c] : other.left_) left_[u] += c;
  for (const auto &[u, c] : other.right_) right_[u] += c;
  total_ += other.total_;
}

namespace {

template <typename Map, typename Key>
std::uint64_t lookup(const Map &m, Key k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

std::uint64_t PairCounts::pair(std::uint32_t l, std::uint32_t r) const {
  return lookup(pairs_, key(l, r));
}
std::uint64_t PairCounts::left(std::uint32_t unit) const {
  return lookup(left_, unit);
}
std::uint64_t PairCounts::right(std::uint32_t unit) const {
  return lookup(right_, unit);
}

double rescaled_npmi(std::uint64_t pair_count, std::uint64_t left_count,
                     std::uint64_t right_count, std::uint64_t total) {
  if (pair_count == 0 || total == 0) return 0.0;
  if (pair_count >= total) return 1.0;
  double ln_c = std::log(static_cast<double>(pair_count));
  double ln_n = std::log(static_cast<double>(total));
  double pmi = ln_c + ln_n - std::log(static_cast<double>(left_count)) -
               std::log(static_cast<double>(right_count));
  double npmi = pmi / (ln_n - ln_c);
  return std::clamp((npmi + 1.0) / 2.0, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Mining

namespace {

// Token trie over interned component ids.
class IdTrie {
 public:
  void insert(std::span<const std::uint32_t> seq) {
    std::uint32_t node = 0;
    for (std::uint32_t id : seq) {
      auto [it, added] =
          next_[node].try_emplace(id, static_cast<std::uint32_t>(next_.size()));
      node = it->second;
      if (added) {
        next_.emplace_back();
        terminal_.push_back(false);
      }
    }
    terminal_[node] = true;
  }

  std::size_t longest(std::span<const std::uint32_t> seq) const {
    std::uint32_t node = 0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      auto it = next_[node].find(seq[i]);
      if (it == next_[node].end()) break;
      node = it->second;
      if (terminal_[node]) best = i + 1;
    }
    return best;
  }

 private:
  std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> next_{1};
  std::vector<bool> terminal_{false};
};

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t> &v) const {
    std::size_t h = 1469598103934665603ULL;
    for (std::uint32_t x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

PhraseTable mine_phrases(std::span<const TokenSentence> corpus,
                         const PhraseConfig &config) {
  config.validate();
  if (corpus.empty()) throw DataError("empty corpus");

  // Intern components.
  std::unordered_map<std::string, std::uint32_t> comp_ids;
  std::vector<std::string> comp_names;
  std::vector<std::vector<std::uint32_t>> sentences;
  sentences.reserve(corpus.size());
  for (const TokenSentence &s : corpus) {
    std::vector<std::uint32_t> ids;
    ids.reserve(s.tokens.size());
    for (const std::string &t : s.tokens) {
      auto [it, added] = comp_ids.try_emplace(
          t, static_cast<std::uint32_t>(comp_names.size()));
      if (added) comp_names.push_back(t);
      ids.push_back(it->second);
    }
    sentences.push_back(std::move(ids));
  }
  const auto num_comps = static_cast<std::uint32_t>(comp_names.size());

  PhraseTable table;
  IdTrie trie;
  std::vector<std::uint32_t> units;
  for (int pass = 0; pass < config.max_passes; ++pass) {
    // Units: single components keep their id; merged spans are interned
    // after them.
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash>
        unit_ids;
    std::vector<std::vector<std::uint32_t>> unit_comps;
    auto unit_components = [&](std::uint32_t u) {
      return u < num_comps ? std::vector<std::uint32_t>{u}
                           : unit_comps[u - num_comps];
    };

    PairCounts counts;
    for (const auto &sent : sentences) {
      units.clear();
      std::span<const std::uint32_t> view(sent);
      std::size_t i = 0;
      while (i < view.size()) {
        std::size_t len = pass == 0 ? 0 : trie.longest(view.subspan(i));
        if (len >= 2) {
          std::vector<std::uint32_t> span_ids(view.begin() + i,
                                              view.begin() + i + len);
          auto [it, added] = unit_ids.try_emplace(
              span_ids, num_comps + static_cast<std::uint32_t>(unit_comps.size()));
          if (added) unit_comps.push_back(std::move(span_ids));
          units.push_back(it->second);
          i += len;
        } else {
          units.push_back(view[i]);
          ++i;
        }
      }
      counts.add_sentence(units);
    }

    // Candidates in a deterministic order.
    std::vector<std::pair<std::vector<std::string>, double>> found;
    for (const auto &[k, c] : counts.pairs()) {
      if (static_cast<std::int64_t>(c) < config.min_pair_count) continue;
      auto l = static_cast<std::uint32_t>(k >> 32);
      auto r = static_cast<std::uint32_t>(k & 0xFFFFFFFFu);
      double s = rescaled_npmi(c, counts.left(l), counts.right(r),
                               counts.total());
      if (s < config.threshold) continue;
      std::vector<std::uint32_t> ids = unit_components(l);
      std::vector<std::uint32_t> rhs = unit_components(r);
      ids.insert(ids.end(), rhs.begin(), rhs.end());
      std::vector<std::string> comps;
      comps.reserve(ids.size());
      for (std::uint32_t id : ids) comps.push_back(comp_names[id]);
      if (table.contains(comps)) continue;
      trie.insert(ids);
      found.emplace_back(std::move(comps), s);
    }
    if (found.empty()) break;
    std::sort(found.begin(), found.end());
    for (auto &[comps, s] : found) {
      // The same span can arise from two different splits; keep the higher
      // score.
      auto prev = table.score(comps);
      if (!prev || *prev < s) table.insert(comps, s);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Persistence

void save_phrase_table(std::ostream &out, const PhraseTable &table) {
  for (const PhraseEntry &e : table.sorted_entries()) {
    out << join(e.components, " ") << '\t' << format_double(e.score) << '\n';
  }
}

void save_phrase_table(const std::string &path, const PhraseTable &table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write phrase table '" + path + "'");
  save_phrase_table(out, table);
  if (!out) throw IoError("write failed for phrase table '" + path + "'");
}

PhraseTable load_phrase_table(std::istream &in) {
  PhraseTable table;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 2) {
      throw ParseError("expected 'phrase<TAB>score'", line_no);
    }
    std::vector<std::string> comps = split_whitespace(fields[0]);
    if (comps.size() < 2) {
      throw ParseError("phrase needs at least two components", line_no);
    }
    double score;
    try {
      std::size_t used = 0;
      score = std::stod(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw ParseError("bad score '" + fields[1] + "'", line_no);
    }
    if (!(score >= 0.0 && score <= 1.0)) {
      throw ParseError("score outside [0, 1]", line_no);
    }
    table.insert(std::move(comps), score);
  }
  return table;
}

PhraseTable load_phrase_table(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open phrase table '" + path + "'");
  return load_phrase_table(in);
}

}  // namespace needstack
