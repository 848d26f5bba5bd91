#include "needstack/topneeds.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "needstack/error.h"
#include "needstack/phrases.h"
#include "needstack/text_util.h"

namespace needstack {

void PosLexicon::add(std::string_view token, std::string_view tag,
                     std::uint64_t count) {
  if (count == 0) return;
  entries_[to_lower_ascii(token)][std::string(tag)] += count;
}

const std::map<std::string, std::uint64_t> *PosLexicon::histogram(
    std::string_view token) const {
  auto it = entries_.find(to_lower_ascii(token));
  return it == entries_.end() ? nullptr : &it->second;
}

PosLexicon build_pos_lexicon(
    const std::vector<std::pair<std::string, std::string>> &tagged) {
  if (tagged.empty()) throw DataError("no tagged tokens for POS lexicon");
  PosLexicon lex;
  for (const auto &[token, tag] : tagged) lex.add(token, tag);
  return lex;
}

std::vector<std::pair<std::string, std::string>> read_conllu_tags(
    std::istream &in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError("expected 10 columns, found " +
                           std::to_string(cols.size()),
                       line_no);
    }
    const std::string &id = cols[0];
    if (id.find_first_of("-.") != std::string::npos) continue;
    out.emplace_back(cols[1], cols[3]);
  }
  return out;
}

PosLexicon load_pos_lexicon_tsv(std::istream &in) {
  PosLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2 && cols.size() != 3) {
      throw ParseError("expected 'token<TAB>tag[<TAB>count]'", line_no);
    }
    std::uint64_t count = 1;
    if (cols.size() == 3) {
      try {
        std::size_t used = 0;
        count = std::stoull(cols[2], &used);
        if (used != cols[2].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception &) {
        throw ParseError("bad count '" + cols[2] + "'", line_no);
      }
    }
    if (cols[0].empty() || cols[1].empty()) {
      throw ParseError("empty token or tag", line_no);
    }
    lex.add(cols[0], cols[1], count);
  }
  return lex;
}

PosLexicon load_pos_lexicon(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open POS lexicon '" + path + "'");
  PosLexicon lex;
  const bool conllu = path.size() >= 7 &&
                      path.compare(path.size() - 7, 7, ".conllu") == 0;
  if (conllu) {
    auto tagged = read_conllu_tags(in);
    if (tagged.empty()) throw DataError("no tagged tokens in '" + path + "'");
    lex = build_pos_lexicon(tagged);
  } else {
    lex = load_pos_lexicon_tsv(in);
  }
  if (lex.empty()) throw DataError("no tagged tokens in '" + path + "'");
  return lex;
}

void save_pos_lexicon(std::ostream &out, const PosLexicon &lexicon) {
  std::vector<const std::string *> tokens;
  for (const auto &[tok, hist] : lexicon.entries()) tokens.push_back(&tok);
  std::sort(tokens.begin(), tokens.end(),
            [](const std::string *a, const std::string *b) { return *a < *b; });
  for (const std::string *tok : tokens) {
    for (const auto &[tag, c] : *lexicon.histogram(*tok)) {
      out << *tok << '\t' << tag << '\t' << c << '\n';
    }
  }
}

bool is_noun_tag(std::string_view tag) {
  return tag == "NOUN" || tag == "PROPN" || tag == "NN" || tag == "NNS" ||
         tag == "NNP" || tag == "NNPS";
}

bool is_noun(const PosLexicon &lexicon, std::string_view term) {
  std::size_t cut = term.rfind(kPhraseJoiner);
  if (cut != std::string_view::npos && cut + 1 < term.size()) {
    term = term.substr(cut + 1);
  }
  const auto *hist = lexicon.histogram(term);
  if (!hist || hist->empty()) return false;
  std::uint64_t best = 0, best_noun = 0;
  for (const auto &[tag, c] : *hist) {
    best = std::max(best, c);
    if (is_noun_tag(tag)) best_noun = std::max(best_noun, c);
  }
  return best_noun > 0 && best_noun == best;
}

SeedMerge parse_seed_merge(std::string_view name) {
  if (name == "max") return SeedMerge::kMax;
  if (name == "mean") return SeedMerge::kMean;
  throw ConfigError("merge must be 'max' or 'mean', got '" +
                    std::string(name) + "'");
}

const std::vector<std::string> &need_word_forms() {
  static const std::vector<std::string> kForms = {
      "need", "needs", "needing", "needed", "supply", "supplies"};
  return kForms;
}

namespace {

RankedResourceList rank_impl(const EmbeddingModel &model,
                             const PosLexicon *lexicon,
                             const RankConfig &config) {
  if (config.seeds.empty()) throw DataError("no seed terms given");
  std::vector<std::span<const float>> seed_rows;
  std::vector<std::uint32_t> seed_ids;
  for (const std::string &s : config.seeds) {
    auto id = model.vocab.find(s);
    if (!id) throw DataError("seed '" + s + "' not in vocabulary");
    seed_ids.push_back(*id);
    seed_rows.push_back(model.input_row(*id));
  }
  for (std::span<const float> row : seed_rows) {
    if (std::all_of(row.begin(), row.end(), [](float x) { return x == 0.0f; })) {
      throw DataError("degenerate seed");
    }
  }

  RankedResourceList list;
  list.seeds = config.seeds;
  list.k = config.k;
  if (config.k == 0) return list;

  const auto &forms = need_word_forms();
  struct Scored {
    double score;
    std::uint32_t index;
  };
  std::vector<Scored> candidates;
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    if (std::find(seed_ids.begin(), seed_ids.end(), i) != seed_ids.end()) {
      continue;
    }
    const std::string &term = model.vocab.terms[i];
    if (config.exclude_need_forms &&
        std::find(forms.begin(), forms.end(), term) != forms.end()) {
      continue;
    }
    if (lexicon && !is_noun(*lexicon, term)) continue;
    double score = config.merge == SeedMerge::kMax ? -2.0 : 0.0;
    for (std::span<const float> seed : seed_rows) {
      double c = cosine(model.input_row(i), seed);
      if (config.merge == SeedMerge::kMax) {
        score = std::max(score, c);
      } else {
        score += c;
      }
    }
    if (config.merge == SeedMerge::kMean) score /= double(seed_rows.size());
    candidates.push_back({score, static_cast<std::uint32_t>(i)});
  }
  auto better = [](const Scored &a, const Scored &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.index < b.index;
  };
  const std::size_t n = std::min(config.k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + n,
                    candidates.end(), better);
  for (std::size_t i = 0; i < n; ++i) {
    list.items.push_back(
        {model.vocab.terms[candidates[i].index], candidates[i].score});
  }
  return list;
}

}  // namespace

RankedResourceList rank_top_needs(const EmbeddingModel &model,
                                  const PosLexicon &lexicon,
                                  const RankConfig &config) {
  return rank_impl(model, &lexicon, config);
}

RankedResourceList rank_top_needs(const EmbeddingModel &model,
                                  const RankConfig &config) {
  return rank_impl(model, nullptr, config);
}

void write_ranked(std::ostream &out, const RankedResourceList &list) {
  for (std::size_t i = 0; i < list.items.size(); ++i) {
    out << (i + 1) << '\t' << list.items[i].term << '\t'
        << format_fixed(list.items[i].score, 6) << '\n';
  }
}

RankedResourceList read_ranked(std::istream &in) {
  RankedResourceList list;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3) {
      throw ParseError("expected 'rank<TAB>term<TAB>score'", line_no);
    }
    try {
      std::size_t used = 0;
      long rank = std::stol(cols[0], &used);
      if (used != cols[0].size() ||
          rank != static_cast<long>(list.items.size()) + 1) {
        throw std::invalid_argument("rank");
      }
      double score = std::stod(cols[2], &used);
      if (used != cols[2].size()) throw std::invalid_argument("score");
      list.items.push_back({cols[1], score});
    } catch (const std::exception &) {
      throw ParseError("bad ranked row", line_no);
    }
  }
  list.k = list.items.size();
  return list;
}

RankedResourceList read_ranked(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ranked list '" + path + "'");
  return read_ranked(in);
}

}  // namespace needstack
