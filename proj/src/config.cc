#include "needstack/config.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "needstack/error.h"
#include "needstack/text_util.h"

namespace needstack {

namespace {

template <typename T>
T parse_integer(std::string_view key, std::string_view v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" +
                      std::string(v) + "'");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" +
                      std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  std::string s = to_lower_ascii(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" +
                    std::string(v) + "'");
}

std::vector<std::string> parse_list(std::string_view key, std::string_view v) {
  std::vector<std::string> out;
  for (const std::string &part : split(v, ',')) {
    std::string_view t = trim(part);
    if (t.empty()) {
      throw ConfigError(std::string(key) + ": empty entry in list '" +
                        std::string(v) + "'");
    }
    out.emplace_back(t);
  }
  return out;
}

std::string_view on_error_name(OnError p) {
  return p == OnError::kSkip ? "skip" : "fail";
}

}  // namespace

const std::vector<std::string> &PipelineConfig::keys() {
  static const std::vector<std::string> kKeys = {
      "on-error",  "threshold",      "min-pair-count", "max-passes",
      "dim",       "window",         "negative",       "epochs",
      "min-count", "subsample",      "lr",             "seed",
      "workers",   "seeds",          "k",              "merge",
      "exclude-forms", "scheme",     "strict-pos",     "lemma-trigger",
      "cutoff",    "baseline-seeds", "aggregate",      "baseline-merge"};
  return kKeys;
}

void PipelineConfig::set(std::string_view key, std::string_view raw) {
  std::string_view v = trim(raw);
  if (key == "on-error") {
    on_error = parse_on_error(v);
  } else if (key == "threshold") {
    phrases.threshold = parse_real(key, v);
  } else if (key == "min-pair-count") {
    phrases.min_pair_count = parse_integer<std::int64_t>(key, v);
  } else if (key == "max-passes") {
    phrases.max_passes = parse_integer<int>(key, v);
  } else if (key == "dim") {
    train.dim = parse_integer<int>(key, v);
  } else if (key == "window") {
    train.window = parse_integer<int>(key, v);
  } else if (key == "negative") {
    train.negative = parse_integer<int>(key, v);
  } else if (key == "epochs") {
    train.epochs = parse_integer<int>(key, v);
  } else if (key == "min-count") {
    train.min_count = parse_integer<std::int64_t>(key, v);
  } else if (key == "subsample") {
    train.subsample = parse_real(key, v);
  } else if (key == "lr") {
    train.initial_lr = parse_real(key, v);
  } else if (key == "seed") {
    train.seed = parse_integer<std::uint64_t>(key, v);
  } else if (key == "workers") {
    train.workers = parse_integer<int>(key, v);
  } else if (key == "seeds") {
    rank.seeds = parse_list(key, v);
  } else if (key == "k") {
    rank.k = parse_integer<std::size_t>(key, v);
  } else if (key == "merge") {
    rank.merge = parse_seed_merge(v);
  } else if (key == "exclude-forms") {
    rank.exclude_need_forms = parse_bool(key, v);
  } else if (key == "scheme") {
    LabelScheme::by_name(v);
    scheme = std::string(v);
  } else if (key == "strict-pos") {
    match.strict_pos = parse_bool(key, v);
  } else if (key == "lemma-trigger") {
    match.lemma_trigger = parse_bool(key, v);
  } else if (key == "cutoff") {
    baseline.cutoff = parse_integer<std::size_t>(key, v);
  } else if (key == "baseline-seeds") {
    baseline.seeds = parse_list(key, v);
  } else if (key == "aggregate") {
    baseline.aggregate = parse_vector_aggregate(v);
  } else if (key == "baseline-merge") {
    baseline.merge = parse_seed_merge(v);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
  phrases.validate();
  train.validate();
}

void PipelineConfig::validate() const {
  phrases.validate();
  train.validate();
  if (rank.seeds.empty()) throw ConfigError("seeds must not be empty");
  if (baseline.seeds.empty()) {
    throw ConfigError("baseline-seeds must not be empty");
  }
  LabelScheme::by_name(scheme);
}

void apply_config(std::istream &in, PipelineConfig &config) {
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    std::string_view t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key(trim(t.substr(0, eq)));
    try {
      config.set(key, t.substr(eq + 1));
    } catch (const ConfigError &e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
}

void apply_config_file(const std::string &path, PipelineConfig &config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config(in, config);
}

void write_config(std::ostream &out, const PipelineConfig &c) {
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "on-error = " << on_error_name(c.on_error) << '\n'
      << "threshold = " << format_double(c.phrases.threshold) << '\n'
      << "min-pair-count = " << c.phrases.min_pair_count << '\n'
      << "max-passes = " << c.phrases.max_passes << '\n'
      << "dim = " << c.train.dim << '\n'
      << "window = " << c.train.window << '\n'
      << "negative = " << c.train.negative << '\n'
      << "epochs = " << c.train.epochs << '\n'
      << "min-count = " << c.train.min_count << '\n'
      << "subsample = " << format_double(c.train.subsample) << '\n'
      << "lr = " << format_double(c.train.initial_lr) << '\n'
      << "seed = " << c.train.seed << '\n'
      << "workers = " << c.train.workers << '\n'
      << "seeds = " << join(c.rank.seeds, ",") << '\n'
      << "k = " << c.rank.k << '\n'
      << "merge = " << (c.rank.merge == SeedMerge::kMax ? "max" : "mean")
      << '\n'
      << "exclude-forms = " << b(c.rank.exclude_need_forms) << '\n'
      << "scheme = " << c.scheme << '\n'
      << "strict-pos = " << b(c.match.strict_pos) << '\n'
      << "lemma-trigger = " << b(c.match.lemma_trigger) << '\n'
      << "cutoff = " << c.baseline.cutoff << '\n'
      << "baseline-seeds = " << join(c.baseline.seeds, ",") << '\n'
      << "aggregate = "
      << (c.baseline.aggregate == VectorAggregate::kMean ? "mean" : "sum")
      << '\n'
      << "baseline-merge = "
      << (c.baseline.merge == SeedMerge::kMax ? "max" : "mean") << '\n';
}

}  // namespace needstack
