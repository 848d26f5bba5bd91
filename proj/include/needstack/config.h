#ifndef NEEDSTACK_CONFIG_H_
#define NEEDSTACK_CONFIG_H_

// Flat "key = value" run configuration shared by every subcommand.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "needstack/corpus.h"
#include "needstack/embeddings.h"
#include "needstack/evaluation.h"
#include "needstack/phrases.h"
#include "needstack/topneeds.h"
#include "needstack/wnw.h"

namespace needstack {

struct PipelineConfig {
  OnError on_error = OnError::kSkip;
  PhraseConfig phrases;
  TrainConfig train;
  RankConfig rank;
  std::string scheme = "ud";
  MatchOptions match;
  BaselineConfig baseline;

  // Parses and stores one value. Throws ConfigError for an unknown key or a
  // value that does not parse or violates its module's constraints.
  void set(std::string_view key, std::string_view value);

  // Whole-config checks; throws ConfigError.
  void validate() const;

  // Every accepted key, in documentation order.
  static const std::vector<std::string> &keys();
};

// Applies "key = value" lines on top of `config`. Blank lines and lines
// starting with '#' are ignored. Errors carry the line number.
void apply_config(std::istream &in, PipelineConfig &config);
void apply_config_file(const std::string &path, PipelineConfig &config);

// Writes every key with its current value, loadable by apply_config.
void write_config(std::ostream &out, const PipelineConfig &config);

}  // namespace needstack

#endif  // NEEDSTACK_CONFIG_H_
