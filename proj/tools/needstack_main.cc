// needstack command-line driver. Every subcommand reads and writes the file
// formats of its library module; `pipeline` chains ingest, mine-phrases,
// annotate, train and top-needs in one process.

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "needstack/config.h"
#include "needstack/conllu.h"
#include "needstack/corpus.h"
#include "needstack/embeddings.h"
#include "needstack/error.h"
#include "needstack/evaluation.h"
#include "needstack/phrases.h"
#include "needstack/text_util.h"
#include "needstack/topneeds.h"
#include "needstack/wnw.h"

namespace fs = std::filesystem;
using namespace needstack;

namespace {

// Config keys exposed as flags on each subcommand.
const std::vector<std::string> kIngestKeys = {"on-error"};
const std::vector<std::string> kPhraseKeys = {"threshold", "min-pair-count",
                                              "max-passes"};
const std::vector<std::string> kTrainKeys = {
    "dim",       "window",    "negative", "epochs", "min-count",
    "subsample", "lr",        "seed",     "workers"};
const std::vector<std::string> kRankKeys = {"seeds", "k", "merge"};
const std::vector<std::string> kExtractKeys = {"scheme"};
const std::vector<std::string> kBaselineKeys = {
    "cutoff", "baseline-seeds", "aggregate", "baseline-merge", "on-error"};

struct Overrides {
  std::vector<std::pair<std::string, std::optional<std::string>>> values;
  std::vector<std::pair<std::string, CLI::Option *>> flags;
};

std::string describe_key(const std::string &key) {
  static const std::map<std::string, std::string> kHelp = {
      {"on-error", "skip or fail on malformed input lines"},
      {"threshold", "rescaled NPMI threshold for phrases, in [0,1]"},
      {"min-pair-count", "minimum pair count for a phrase candidate"},
      {"max-passes", "phrase merging passes"},
      {"dim", "embedding dimension"},
      {"window", "maximum context window radius"},
      {"negative", "negative samples per positive pair"},
      {"epochs", "training epochs"},
      {"min-count", "minimum term frequency"},
      {"subsample", "subsampling threshold (0 disables)"},
      {"lr", "initial learning rate"},
      {"seed", "random seed"},
      {"workers", "training threads (1 is deterministic)"},
      {"seeds", "comma-separated seed terms"},
      {"k", "number of ranked terms"},
      {"merge", "seed score merge: max or mean"},
      {"exclude-forms", "drop need/supply word forms from the ranking"},
      {"scheme", "dependency label scheme: ud or clear"},
      {"strict-pos", "require NOUN/PROPN arguments"},
      {"lemma-trigger", "match need verbs by lemma as well as form"},
      {"cutoff", "number of tweets the baseline labels positive"},
      {"baseline-seeds", "comma-separated stemmed baseline seeds"},
      {"aggregate", "tweet vector aggregate: mean or sum"},
      {"baseline-merge", "baseline seed merge: max or mean"},
  };
  auto it = kHelp.find(key);
  return it == kHelp.end() ? std::string() : it->second;
}

void add_keys(Overrides &ov, const std::vector<std::string> &keys) {
  for (const std::string &key : keys) {
    bool dup = false;
    for (const auto &[k, v] : ov.values) dup = dup || k == key;
    if (dup) continue;
    ov.values.emplace_back(key, std::nullopt);
  }
}

// Options bind to the vector elements, so this runs once the vector is final.
void bind_keys(CLI::App *app, Overrides &ov) {
  for (auto &[key, value] : ov.values) {
    app->add_option("--" + key, value, describe_key(key));
  }
}

void add_bool_key(CLI::App *app, Overrides &ov, const std::string &key) {
  CLI::Option *opt = app->add_flag("--" + key)->description(describe_key(key));
  ov.flags.emplace_back(key, opt);
}

// Defaults, then $NEEDSTACK_CONFIG, then --config, then flags.
PipelineConfig resolve_config(const std::string &config_path,
                              const Overrides &ov) {
  PipelineConfig cfg;
  if (const char *env = std::getenv("NEEDSTACK_CONFIG"); env && *env) {
    apply_config_file(env, cfg);
  }
  if (!config_path.empty()) apply_config_file(config_path, cfg);
  for (const auto &[key, value] : ov.values) {
    if (!value) continue;
    try {
      cfg.set(key, *value);
    } catch (const ConfigError &e) {
      throw ConfigError(std::string("--") + e.what());
    }
  }
  for (const auto &[key, opt] : ov.flags) {
    if (opt->count() > 0) cfg.set(key, "true");
  }
  cfg.validate();
  return cfg;
}

void require_file(const std::string &path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw IoError("cannot open '" + path + "'");
  }
}

void check_distinct(const std::string &out,
                    const std::vector<std::string> &inputs) {
  if (out.empty() || out == "-") return;
  std::error_code ec;
  for (const std::string &in : inputs) {
    if (in.empty()) continue;
    if (fs::exists(out, ec) && fs::equivalent(out, in, ec)) {
      throw ConfigError("output '" + out + "' would overwrite input");
    }
  }
}

// Writes to a file, or to standard output for "" or "-". File output goes to
// a temporary name first so a failed run leaves no partial file.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {
    if (to_stdout()) return;
    tmp_ = path_ + ".tmp";
    file_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot write '" + path_ + "'");
  }
  ~Output() {
    if (!committed_ && !tmp_.empty()) {
      file_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }
  std::ostream &stream() { return to_stdout() ? std::cout : file_; }
  void commit() {
    if (to_stdout()) {
      std::cout.flush();
      return;
    }
    file_.close();
    if (!file_) throw IoError("write failed for '" + path_ + "'");
    std::error_code ec;
    fs::rename(tmp_, path_, ec);
    if (ec) throw IoError("cannot write '" + path_ + "': " + ec.message());
    committed_ = true;
  }

 private:
  bool to_stdout() const { return path_.empty() || path_ == "-"; }
  std::string path_;
  std::string tmp_;
  std::ofstream file_;
  bool committed_ = false;
};

class Timer {
 public:
  explicit Timer(std::string name)
      : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  void report(std::size_t items, const std::string &unit) const {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start_)
                   .count();
    std::cerr << "needstack " << name_ << ": " << items << ' ' << unit
              << " in " << format_fixed(s, 3) << " s\n";
  }

 private:
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<TokenSentence> ingest(const std::string &path, OnError policy,
                                  bool baseline_tokens, std::size_t *tweets,
                                  std::size_t *skipped) {
  require_file(path);
  TweetReader reader(path, policy);
  std::vector<TokenSentence> out;
  std::size_t n = 0;
  while (auto rec = reader.next()) {
    ++n;
    if (baseline_tokens) {
      TokenSentence s;
      s.tweet_id = rec->id;
      s.tokens = baseline_preprocess(rec->text);
      if (!s.tokens.empty()) out.push_back(std::move(s));
    } else {
      for (TokenSentence &s : tokenize_tweet(*rec)) {
        if (!s.tokens.empty()) out.push_back(std::move(s));
      }
    }
  }
  if (tweets) *tweets = n;
  if (skipped) *skipped = reader.skipped();
  return out;
}

void annotate_corpus(std::vector<TokenSentence> &corpus,
                     const PhraseTable &table) {
  for (TokenSentence &s : corpus) s.tokens = annotate_phrases(s.tokens, table);
}

void write_corpus(std::ostream &out, const std::vector<TokenSentence> &corpus) {
  for (const TokenSentence &s : corpus) write_token_sentence(out, s);
}

std::vector<TokenSentence> read_corpus(const std::string &path) {
  require_file(path);
  return read_token_corpus(path);
}

RankedResourceList rank(const EmbeddingModel &model,
                        const std::string &pos_lex, const RankConfig &rc) {
  if (pos_lex.empty()) {
    std::cerr << "needstack: warning: no --pos-lex given, noun filter off\n";
    return rank_top_needs(model, rc);
  }
  require_file(pos_lex);
  PosLexicon lex = load_pos_lexicon(pos_lex);
  return rank_top_needs(model, lex, rc);
}

std::vector<std::size_t> parse_ks(const std::string &text) {
  std::vector<std::size_t> ks;
  for (const std::string &part : split(text, ',')) {
    std::string_view t = trim(part);
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size() || v == 0) {
      throw ConfigError("--ks: bad value '" + std::string(t) + "'");
    }
    ks.push_back(v);
  }
  return ks;
}

int run(int argc, char **argv) {
  CLI::App app{"needstack: crisis-tweet need mining and who-needs-what "
               "extraction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "needstack 0.1.0");
  std::string config_path;
  app.add_option("--config", config_path,
                 "key = value config file (overrides $NEEDSTACK_CONFIG)");
  std::function<void()> action;

  // ingest
  Overrides ingest_ov;
  std::string ingest_in, ingest_out;
  bool baseline_tokens = false;
  auto *ingest_cmd = app.add_subcommand(
      "ingest", "Tokenize a JSONL tweet file into a sentence corpus TSV");
  ingest_cmd->add_option("--in", ingest_in, "JSONL tweets")->required();
  ingest_cmd->add_option("--out", ingest_out, "corpus TSV (default stdout)");
  ingest_cmd->add_flag("--baseline-preprocess", baseline_tokens,
                       "emit one stemmed, stopword-free sentence per tweet");
  add_keys(ingest_ov, kIngestKeys);
  bind_keys(ingest_cmd, ingest_ov);

  // mine-phrases
  Overrides mine_ov;
  std::string mine_corpus, mine_out;
  auto *mine_cmd =
      app.add_subcommand("mine-phrases", "Mine NPMI phrases from a corpus");
  mine_cmd->add_option("--corpus", mine_corpus, "corpus TSV")->required();
  mine_cmd->add_option("--out", mine_out, "phrase TSV (default stdout)");
  add_keys(mine_ov, kPhraseKeys);
  bind_keys(mine_cmd, mine_ov);

  // annotate
  Overrides annotate_ov;
  std::string ann_corpus, ann_phrases, ann_out;
  auto *ann_cmd = app.add_subcommand(
      "annotate", "Join phrase occurrences in a corpus with '-'");
  ann_cmd->add_option("--corpus", ann_corpus, "corpus TSV")->required();
  ann_cmd->add_option("--phrases", ann_phrases, "phrase TSV")->required();
  ann_cmd->add_option("--out", ann_out, "corpus TSV (default stdout)");

  // train
  Overrides train_ov;
  std::string train_corpus, train_out, train_text;
  auto *train_cmd =
      app.add_subcommand("train", "Train skip-gram negative-sampling vectors");
  train_cmd->add_option("--corpus", train_corpus, "corpus TSV")->required();
  train_cmd->add_option("--out", train_out, "binary model")->required();
  train_cmd->add_option("--text-out", train_text,
                        "also write input vectors as text");
  add_keys(train_ov, kTrainKeys);
  bind_keys(train_cmd, train_ov);

  // top-needs
  Overrides top_ov;
  std::string top_model, top_lex, top_out;
  auto *top_cmd = app.add_subcommand(
      "top-needs", "Rank nouns by similarity to the seed terms");
  top_cmd->add_option("--model", top_model, "binary model")->required();
  top_cmd->add_option("--pos-lex", top_lex,
                      "POS lexicon (.conllu or token/tag TSV)");
  top_cmd->add_option("--out", top_out, "ranked TSV (default stdout)");
  add_keys(top_ov, kRankKeys);
  bind_keys(top_cmd, top_ov);
  add_bool_key(top_cmd, top_ov, "exclude-forms");

  // extract
  Overrides ext_ov;
  std::string ext_conllu, ext_out, ext_labels;
  auto *ext_cmd = app.add_subcommand(
      "extract", "Extract who-needs-what triples from parsed CoNLL-U");
  ext_cmd->add_option("--conllu", ext_conllu, "parsed sentences")
      ->required();
  ext_cmd->add_option("--out", ext_out, "triples TSV (default stdout)");
  ext_cmd->add_option("--labels-out", ext_labels,
                      "per-sentence 0/1 labels TSV");
  add_keys(ext_ov, kExtractKeys);
  bind_keys(ext_cmd, ext_ov);
  add_bool_key(ext_cmd, ext_ov, "strict-pos");
  add_bool_key(ext_cmd, ext_ov, "lemma-trigger");

  // baseline
  Overrides base_ov;
  std::string base_tweets, base_model, base_out, base_scores;
  auto *base_cmd = app.add_subcommand(
      "baseline", "Label need tweets by cosine ranking against seed vectors");
  base_cmd->add_option("--tweets", base_tweets, "JSONL tweets")->required();
  base_cmd->add_option("--model", base_model,
                       "model trained on --baseline-preprocess output")
      ->required();
  base_cmd->add_option("--out", base_out, "labels TSV (default stdout)");
  base_cmd->add_option("--scores-out", base_scores,
                       "id<TAB>score<TAB>label TSV");
  add_keys(base_ov, kBaselineKeys);
  bind_keys(base_cmd, base_ov);

  // eval-topk
  std::string ek_ranked, ek_out, ek_ks = "10,20,30,40,50,60,70,80,90,100";
  std::vector<std::string> ek_lex;
  auto *ek_cmd = app.add_subcommand(
      "eval-topk", "Precision@k of a ranked list against lexicons");
  ek_cmd->add_option("--ranked", ek_ranked, "ranked TSV")->required();
  ek_cmd->add_option("--lexicon", ek_lex,
                     "one term per line; repeat for several lexicons")
      ->required();
  ek_cmd->add_option("--ks", ek_ks, "comma-separated cutoffs")
      ->capture_default_str();
  ek_cmd->add_option("--out", ek_out, "report TSV (default stdout)");

  // eval-triples
  std::string et_pred, et_gold, et_out;
  auto *et_cmd = app.add_subcommand(
      "eval-triples", "Precision, recall and F1 of sentence labels");
  et_cmd->add_option("--pred", et_pred, "predicted labels TSV")->required();
  et_cmd->add_option("--gold", et_gold, "gold labels TSV")->required();
  et_cmd->add_option("--out", et_out, "report TSV (default stdout)");

  // kappa
  std::string ka_a, ka_b, ka_out;
  auto *ka_cmd =
      app.add_subcommand("kappa", "Cohen's kappa between two label files");
  ka_cmd->add_option("--a", ka_a, "first annotator labels")->required();
  ka_cmd->add_option("--b", ka_b, "second annotator labels")->required();
  ka_cmd->add_option("--out", ka_out, "report TSV (default stdout)");

  // pipeline
  Overrides pipe_ov;
  std::string pipe_in, pipe_out, pipe_lex, pipe_work;
  auto *pipe_cmd = app.add_subcommand(
      "pipeline", "ingest, mine-phrases, annotate, train and top-needs");
  pipe_cmd->add_option("--in", pipe_in, "JSONL tweets")->required();
  pipe_cmd->add_option("--out", pipe_out, "ranked TSV (default stdout)");
  pipe_cmd->add_option("--pos-lex", pipe_lex,
                       "POS lexicon (.conllu or token/tag TSV)");
  pipe_cmd->add_option("--work-dir", pipe_work,
                       "keep intermediate files in this directory");
  add_keys(pipe_ov, kIngestKeys);
  add_keys(pipe_ov, kPhraseKeys);
  add_keys(pipe_ov, kTrainKeys);
  add_keys(pipe_ov, kRankKeys);
  bind_keys(pipe_cmd, pipe_ov);
  add_bool_key(pipe_cmd, pipe_ov, "exclude-forms");

  ingest_cmd->callback([&] {
    action = [&] {
      PipelineConfig cfg = resolve_config(config_path, ingest_ov);
      check_distinct(ingest_out, {ingest_in});
      Timer t("ingest");
      std::size_t tweets = 0, skipped = 0;
      auto corpus =
          ingest(ingest_in, cfg.on_error, baseline_tokens, &tweets, &skipped);
      Output out(ingest_out);
      write_corpus(out.stream(), corpus);
      out.commit();
      if (skipped) std::cerr << "needstack ingest: skipped " << skipped
                             << " malformed lines\n";
      t.report(tweets, "tweets");
    };
  });
  mine_cmd->callback([&] {
    action = [&] {
      PipelineConfig cfg = resolve_config(config_path, mine_ov);
      check_distinct(mine_out, {mine_corpus});
      Timer t("mine-phrases");
      auto corpus = read_corpus(mine_corpus);
      PhraseTable table = mine_phrases(corpus, cfg.phrases);
      Output out(mine_out);
      save_phrase_table(out.stream(), table);
      out.commit();
      t.report(corpus.size(), "sentences");
    };
  });
  ann_cmd->callback([&] {
    action = [&] {
      resolve_config(config_path, annotate_ov);
      check_distinct(ann_out, {ann_corpus, ann_phrases});
      Timer t("annotate");
      auto corpus = read_corpus(ann_corpus);
      require_file(ann_phrases);
      PhraseTable table = load_phrase_table(ann_phrases);
      annotate_corpus(corpus, table);
      Output out(ann_out);
      write_corpus(out.stream(), corpus);
      out.commit();
      t.report(corpus.size(), "sentences");
    };
  });
  train_cmd->callback([&] {
    action = [&] {
      PipelineConfig cfg = resolve_config(config_path, train_ov);
      check_distinct(train_out, {train_corpus});
      check_distinct(train_text, {train_corpus});
      Timer t("train");
      auto corpus = read_corpus(train_corpus);
      EmbeddingModel model = train_sgns(corpus, cfg.train);
      Output out(train_out);
      save_model(out.stream(), model);
      out.commit();
      if (!train_text.empty()) {
        Output text(train_text);
        export_text(text.stream(), model);
        text.commit();
      }
      t.report(corpus.size(), "sentences");
    };
  });
  top_cmd->callback([&] {
    action = [&] {
      PipelineConfig cfg = resolve_config(config_path, top_ov);
      check_distinct(top_out, {top_model, top_lex});
      Timer t("top-needs");
      require_file(top_model);
      EmbeddingModel model = load_model(top_model);
      RankedResourceList list = rank(model, top_lex, cfg.rank);
      Output out(top_out);
      write_ranked(out.stream(), list);
      out.commit();
      t.report(list.items.size(), "terms");
    };
  });
  ext_cmd->callback([&] {
    action = [&] {
      PipelineConfig cfg = resolve_config(config_path, ext_ov);
      check_distinct(ext_out, {ext_conllu});
      check_distinct(ext_labels, {ext_conllu});
      Timer t("extract");
      require_file(ext_conllu);
      auto sentences = parse_conllu_file(ext_conllu);
      Extraction ex = extract_triples(
          sentences, LabelScheme::by_name(cfg.scheme), cfg.match);
      Output out(ext_out);
      write_triples(out.stream(), ex.triples);
      out.commit();
      if (!ext_labels.empty()) {
        Output labels(ext_labels);
        write_labels(labels.stream(), ex.labels);
        labels.commit();
      }
      t.report(sentences.size(), "sentences");
    };
  });
  base_cmd->callback([&] {
    action = [&] {
      PipelineConfig cfg = resolve_config(config_path, base_ov);
      check_distinct(base_out, {base_tweets, base_model});
      check_distinct(base_scores, {base_tweets, base_model});
      Timer t("baseline");
      require_file(base_tweets);
      require_file(base_model);
      std::size_t skipped = 0;
      auto tweets = load_tweets(base_tweets, cfg.on_error, &skipped);
      EmbeddingModel model = load_model(base_model);
      auto scores = baseline_rank(tweets, model, cfg.baseline);
      Output out(base_out);
      for (const BaselineScore &s : scores) {
        out.stream() << s.id << '\t' << (s.positive ? 1 : 0) << '\n';
      }
      out.commit();
      if (!base_scores.empty()) {
        Output sc(base_scores);
        for (const BaselineScore &s : scores) {
          sc.stream() << s.id << '\t' << format_fixed(s.score, 6) << '\t'
                      << (s.positive ? 1 : 0) << '\n';
        }
        sc.commit();
      }
      t.report(tweets.size(), "tweets");
    };
  });
  ek_cmd->callback([&] {
    action = [&] {
      resolve_config(config_path, Overrides{});
      std::vector<std::string> inputs = ek_lex;
      inputs.push_back(ek_ranked);
      check_distinct(ek_out, inputs);
      Timer t("eval-topk");
      std::vector<std::size_t> ks = parse_ks(ek_ks);
      require_file(ek_ranked);
      RankedResourceList ranked = read_ranked(ek_ranked);
      std::vector<ResourceLexicon> lexicons;
      for (const std::string &p : ek_lex) {
        require_file(p);
        lexicons.push_back(load_resource_lexicon(p));
      }
      EvalReport report = precision_at_k(ranked, lexicons, ks);
      Output out(ek_out);
      write_report_tsv(out.stream(), report);
      out.commit();
      t.report(ranked.items.size(), "terms");
    };
  });
  et_cmd->callback([&] {
    action = [&] {
      resolve_config(config_path, Overrides{});
      check_distinct(et_out, {et_pred, et_gold});
      Timer t("eval-triples");
      require_file(et_pred);
      require_file(et_gold);
      Labels pred = load_labels(et_pred);
      Labels gold = load_labels(et_gold);
      EvalReport report = prf1(pred, gold);
      Output out(et_out);
      write_report_tsv(out.stream(), report);
      out.commit();
      t.report(gold.size(), "sentences");
    };
  });
  ka_cmd->callback([&] {
    action = [&] {
      resolve_config(config_path, Overrides{});
      check_distinct(ka_out, {ka_a, ka_b});
      Timer t("kappa");
      require_file(ka_a);
      require_file(ka_b);
      Labels a = load_labels(ka_a);
      Labels b = load_labels(ka_b);
      KappaResult k = cohens_kappa(a, b);
      Output out(ka_out);
      out.stream() << "kappa\t" << format_double(k.kappa) << '\n'
                   << "observed\t" << format_double(k.observed) << '\n'
                   << "expected\t" << format_double(k.expected) << '\n';
      if (k.degenerate) out.stream() << "flag\tchance agreement is 1\n";
      out.commit();
      t.report(a.size(), "items");
    };
  });
  pipe_cmd->callback([&] {
    action = [&] {
      PipelineConfig cfg = resolve_config(config_path, pipe_ov);
      check_distinct(pipe_out, {pipe_in, pipe_lex});
      Timer t("pipeline");
      std::size_t tweets = 0, skipped = 0;
      auto corpus = ingest(pipe_in, cfg.on_error, false, &tweets, &skipped);
      if (skipped) std::cerr << "needstack pipeline: skipped " << skipped
                             << " malformed lines\n";
      auto keep = [&](const std::string &name, auto &&writer) {
        if (pipe_work.empty()) return;
        fs::create_directories(pipe_work);
        Output o((fs::path(pipe_work) / name).string());
        writer(o.stream());
        o.commit();
      };
      keep("corpus.tsv", [&](std::ostream &o) { write_corpus(o, corpus); });
      PhraseTable table = mine_phrases(corpus, cfg.phrases);
      keep("phrases.tsv",
           [&](std::ostream &o) { save_phrase_table(o, table); });
      annotate_corpus(corpus, table);
      keep("annotated.tsv", [&](std::ostream &o) { write_corpus(o, corpus); });
      EmbeddingModel model = train_sgns(corpus, cfg.train);
      keep("model.bin", [&](std::ostream &o) { save_model(o, model); });
      RankedResourceList list = rank(model, pipe_lex, cfg.rank);
      Output out(pipe_out);
      write_ranked(out.stream(), list);
      out.commit();
      t.report(tweets, "tweets");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    action();
  } catch (const ConfigError &e) {
    std::cerr << "needstack: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "needstack: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  std::ios::sync_with_stdio(false);
  return run(argc, argv);
}
