// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "needstack/conllu.h"
#include "needstack/embeddings.h"
#include "needstack/evaluation.h"
#include "needstack/phrases.h"
#include "needstack/topneeds.h"
#include "needstack/wnw.h"
#include "oracles.h"
#include "synth.h"
#include "test_paths.h"

namespace fs = std::filesystem;
using namespace needstack;
using namespace needstack::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string &what,
            const std::string &detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << "  C" << id << "  " << what
            << ": " << detail << std::endl;
}

// Runs a criterion body, turning an escaped exception into a FAIL line.
void criterion(int id, const std::string &what,
               const std::function<void()> &body) {
  try {
    body();
  } catch (const std::exception &e) {
    report(id, false, what, std::string("exception: ") + e.what());
  }
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s.setf(std::ios::scientific);
  s.precision(2);
  s << v;
  return s.str();
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string &args, const fs::path &log) {
  std::string cmd = std::string(NEEDSTACK_CLI) + " " + args + " >" +
                    (log / "stdout").string() + " 2>" +
                    (log / "stderr").string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void rule_fixtures() {
  auto start = Clock::now();
  std::size_t sentences = 0;
  bool all_match = true;
  std::string mismatch;
  for (const char *scheme : {"ud", "clear"}) {
    auto parsed = parse_conllu_file(
        data_path(std::string("wnw_fixture_") + scheme + ".conllu"));
    sentences += parsed.size();
    Extraction ex = extract_triples(parsed, LabelScheme::by_name(scheme));
    std::ostringstream got;
    write_triples(got, ex.triples);
    if (got.str() !=
        slurp(data_path(std::string("wnw_expected_") + scheme + ".tsv"))) {
      all_match = false;
      mismatch += std::string(" ") + scheme;
    }
  }
  double secs = seconds_since(start);
  report(1, all_match && sentences == 20 && secs < 1.0,
         "rule-matcher fixtures",
         std::to_string(sentences) + " sentences, " +
             (all_match ? "all triples match" : "mismatch in" + mismatch) +
             ", " + fmt(secs) + " s (limit 1 s)");
}

void gradient_check() {
  Rng rng(2024);
  double worst_update = 0.0, worst_numeric = 0.0;
  for (int i = 0; i < 100; ++i) {
    int dim = rng.range(2, 16);
    int negatives = rng.range(1, 10);
    GradientCheck g = sgns_gradient_check(rng, dim, negatives);
    worst_update = std::max(worst_update, g.update_vs_formula);
    worst_numeric = std::max(worst_numeric, g.formula_vs_numeric);
  }
  report(2, worst_update < 1e-4 && worst_numeric < 1e-4, "SGNS gradient",
         "100 configs, max rel error analytic vs numeric " +
             sci(worst_numeric) + ", update vs analytic " +
             sci(worst_update) + " (limit 1e-4)");
}

void determinism(const fs::path &dir) {
  NeedCorpus corpus = make_need_corpus(5000, 3);
  TrainConfig c;
  c.dim = 50;
  c.epochs = 2;
  c.seed = 77;
  c.workers = 1;
  save_model((dir / "run1.bin").string(), train_sgns(corpus.sentences, c));
  save_model((dir / "run2.bin").string(), train_sgns(corpus.sentences, c));
  std::string a = slurp(dir / "run1.bin");
  std::string b = slurp(dir / "run2.bin");
  report(3, !a.empty() && a == b, "bit-identical training",
         std::to_string(a.size()) + " byte model files " +
             (a == b ? "identical" : "differ"));
}

void neighbor_exactness() {
  Rng rng(4);
  int models = 0, queries = 0, mismatches = 0;
  for (; models < 50; ++models) {
    std::size_t vocab = 1 + rng.uniform(500);
    EmbeddingModel m = random_model(rng, vocab, rng.range(1, 8));
    for (int q = 0; q < 5; ++q, ++queries) {
      std::size_t seed_id = rng.uniform(vocab);
      std::span<const float> seed = m.input_row(seed_id);
      bool zero = std::all_of(seed.begin(), seed.end(),
                              [](float x) { return x == 0.0f; });
      if (zero) continue;
      std::size_t k = 1 + rng.uniform(vocab + 5);
      std::unordered_set<std::string> exclude;
      if (rng.chance(0.5)) exclude.insert(m.vocab.terms[seed_id]);
      TermFilter filter;
      if (rng.chance(0.5)) {
        filter = [](std::string_view t) { return t.back() % 3 != 0; };
      }
      auto got = nearest_neighbors(m, seed, k, filter, exclude);
      auto want = brute_force_neighbors(m, seed, k, filter, exclude);
      bool same = got.size() == want.size();
      for (std::size_t i = 0; same && i < got.size(); ++i) {
        same = got[i].index == want[i].index && got[i].cosine == want[i].cosine;
      }
      if (!same) ++mismatches;
    }
  }
  report(4, mismatches == 0, "nearest-neighbor exactness",
         std::to_string(models) + " models, " + std::to_string(queries) +
             " queries, " + std::to_string(mismatches) + " mismatches");
}

void npmi_oracle() {
  auto tok = [](std::vector<std::string> t) {
    return TokenSentence{"t", std::move(t), 0};
  };
  // x y always adjacent: 10 of 100 pairs.
  std::vector<TokenSentence> correlated;
  for (int i = 0; i < 10; ++i) correlated.push_back(tok({"x", "y"}));
  // x and y each in 10 of 100 pairs, adjacent once.
  std::vector<TokenSentence> independent{tok({"x", "y"})};
  for (int i = 0; i < 9; ++i) {
    independent.push_back(tok({"x", "p" + std::to_string(i)}));
    independent.push_back(tok({"q" + std::to_string(i), "y"}));
  }
  for (int i = 0; i < 90; ++i) {
    correlated.push_back(tok({"f" + std::to_string(i), "g" + std::to_string(i)}));
    if (i < 81) {
      independent.push_back(
          tok({"f" + std::to_string(i), "g" + std::to_string(i)}));
    }
  }
  PhraseConfig cfg;
  cfg.min_pair_count = 1;
  cfg.max_passes = 1;
  cfg.threshold = 0.0;
  auto score = [&](const std::vector<TokenSentence> &c) {
    auto s = mine_phrases(c, cfg).score({"x", "y"});
    return s ? *s : -1.0;
  };
  double one = score(correlated);
  double half = score(independent);
  report(5, std::abs(one - 1.0) <= 1e-9 && std::abs(half - 0.5) <= 1e-9,
         "NPMI oracle",
         "correlated " + fmt(one, 12) + ", independent " + fmt(half, 12) +
             " (tolerance 1e-9)");
}

void metric_oracles() {
  Labels a, b, pred, gold;
  int id = 0;
  auto add = [&](Labels &x, Labels &y, int n, bool vx, bool vy) {
    for (int i = 0; i < n; ++i, ++id) {
      x["s" + std::to_string(id)] = vx;
      y["s" + std::to_string(id)] = vy;
    }
  };
  add(a, b, 80, true, true);
  add(a, b, 20, true, false);
  add(a, b, 10, false, true);
  add(a, b, 90, false, false);
  add(pred, gold, 7, true, true);
  add(pred, gold, 3, true, false);
  add(pred, gold, 3, false, true);
  double kappa = cohens_kappa(a, b).kappa;
  EvalReport r = prf1(pred, gold);
  double p = r.metric("precision"), rc = r.metric("recall"),
         f = r.metric("f1");
  bool ok = std::abs(kappa - 0.7) <= 1e-9 && std::abs(p - 0.7) <= 1e-9 &&
            std::abs(rc - 0.7) <= 1e-9 && std::abs(f - 0.7) <= 1e-9;
  report(6, ok, "metric oracles",
         "kappa " + fmt(kappa, 12) + ", P/R/F1 " + fmt(p, 12) + "/" +
             fmt(rc, 12) + "/" + fmt(f, 12) + " (tolerance 1e-9)");
}

void precision_fixture() {
  RankedResourceList ranked = read_ranked(data_path("table_a1_ranked.tsv"));
  std::vector<ResourceLexicon> lex = {
      load_resource_lexicon(data_path("who.txt"), "who"),
      load_resource_lexicon(data_path("hhs.txt"), "hhs")};
  EvalReport r = precision_at_k(ranked, lex, {10, 100});
  const std::vector<std::pair<std::string, double>> want = {
      {"precision@10/who", 0.8},    {"precision@10/hhs", 0.9},
      {"precision@10/union", 1.0},  {"precision@100/who", 0.41},
      {"precision@100/hhs", 0.57},  {"precision@100/union", 0.64}};
  bool ok = true;
  std::string detail;
  for (const auto &[name, value] : want) {
    double got = r.metric(name);
    ok = ok && std::abs(got - value) <= 1e-12;
    detail += (detail.empty() ? "" : ", ") + name + "=" + fmt(got, 2);
  }
  report(7, ok, "precision@k on fixtures", detail);
}

void distributional_check() {
  int hits = 0;
  double worst = 0.0, total = 0.0;
  std::string misses;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto start = Clock::now();
    NeedCorpus corpus = make_need_corpus(50000, seed);
    TrainConfig c;
    c.seed = seed;
    EmbeddingModel m = train_sgns(corpus.sentences, c);
    RankConfig rc;
    rc.k = 5;
    RankedResourceList top = rank_top_needs(m, corpus.lexicon, rc);
    double secs = seconds_since(start);
    worst = std::max(worst, secs);
    total += secs;
    int found = 0;
    for (const std::string &t : corpus.targets) {
      for (const RankedItem &item : top.items) found += item.term == t;
    }
    if (found == static_cast<int>(corpus.targets.size())) {
      ++hits;
    } else {
      misses += " " + std::to_string(seed);
    }
  }
  report(8, hits >= 9 && worst < 120.0, "synthetic top-5 recovery",
         std::to_string(hits) + "/10 seeds with both targets in top 5" +
             (misses.empty() ? "" : " (missed seeds:" + misses + ")") +
             ", slowest run " + fmt(worst, 1) + " s (limit 120 s), all runs " +
             fmt(total, 1) + " s");
}

void pipeline_throughput(const fs::path &dir) {
  fs::path tweets = dir / "tweets600k.jsonl";
  {
    std::ofstream out(tweets);
    write_synthetic_tweets(out, 600000, 9);
  }
  auto start = Clock::now();
  int code = run_cli("pipeline --in " + tweets.string() + " --out " +
                         (dir / "ranked.tsv").string() + " --work-dir " +
                         (dir / "work").string() + " --dim 100 --epochs 5",
                     dir);
  double secs = seconds_since(start);
  unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  std::string detail = "600000 tweets, dim 100, 5 epochs, " +
                       fmt(secs / 60.0, 2) + " min on " +
                       std::to_string(cores) + " core(s) (limit 30 min, " +
                       "target 10 min), exit " + std::to_string(code);
  if (code != 0) detail += ": " + slurp(dir / "stderr");
  report(9, code == 0 && secs < 1800.0, "pipeline throughput", detail);
  fs::remove(tweets);
}

void extract_throughput(const fs::path &dir) {
  fs::path conllu = dir / "parsed1000.conllu";
  {
    std::ofstream out(conllu);
    for (const DepSentence &s : random_dep_sentences(1000, 10)) {
      write_conllu(out, s);
    }
  }
  auto start = Clock::now();
  int code = run_cli("extract --conllu " + conllu.string() + " --out " +
                         (dir / "triples.tsv").string(),
                     dir);
  double secs = seconds_since(start);
  report(10, code == 0 && secs <= 8.0, "extract throughput",
         "1000 sentences in " + fmt(secs) +
             " s including process start (limit 8 s, target 0.5 s), exit " +
             std::to_string(code));
}

}  // namespace

int main() {
  fs::path dir = scratch_dir("acceptance");
  criterion(1, "rule-matcher fixtures", rule_fixtures);
  criterion(2, "SGNS gradient", gradient_check);
  criterion(3, "bit-identical training", [&] { determinism(dir); });
  criterion(4, "nearest-neighbor exactness", neighbor_exactness);
  criterion(5, "NPMI oracle", npmi_oracle);
  criterion(6, "metric oracles", metric_oracles);
  criterion(7, "precision@k on fixtures", precision_fixture);
  criterion(8, "synthetic top-5 recovery", distributional_check);
  criterion(9, "pipeline throughput", [&] { pipeline_throughput(dir); });
  criterion(10, "extract throughput", [&] { extract_throughput(dir); });
  std::cout << "INFO  C11  corpus-level results (term identities beyond the "
               "fixtures, sentence P/R/F1, baseline scores, annotator "
               "kappa) are not reproducible here: the original tweets and "
               "annotations are unavailable, so C1-C10 use oracle fixtures "
               "and synthetic data instead"
            << std::endl;
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) +
                                                 " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
