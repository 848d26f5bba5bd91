#ifndef NEEDSTACK_CORPUS_H_
#define NEEDSTACK_CORPUS_H_

// Tweet ingestion and text normalization: JSON-lines reading, rule-based
// sentence splitting and a social-media-aware tokenizer.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace needstack {

struct TweetRecord {
  std::string id;
  std::optional<std::string> timestamp;  // ISO-8601, as given in the input
  std::string text;
  std::optional<std::string> lang;
};

struct TokenSentence {
  std::string tweet_id;
  std::vector<std::string> tokens;
  int index_in_tweet = 0;
};

enum class OnError { kSkip, kFail };

OnError parse_on_error(std::string_view name);

// Streams TweetRecords out of a JSON-lines file.
//
// A line is malformed when it is not a JSON object, lacks a string (or
// integer) "id" or a string "text", has text that is blank after trimming,
// repeats an id seen earlier, or carries an id with a tab or newline in it.
// Blank lines are ignored. With OnError::kSkip malformed lines are counted;
// with OnError::kFail the first one raises ParseError carrying its line
// number.
class TweetReader {
 public:
  TweetReader(const std::string &path, OnError policy);
  // Reads from a caller-owned stream.
  TweetReader(std::istream &in, OnError policy);

  TweetReader(const TweetReader &) = delete;
  TweetReader &operator=(const TweetReader &) = delete;

  std::optional<TweetRecord> next();

  std::size_t skipped() const { return skipped_; }
  std::size_t records() const { return records_; }
  std::size_t line_number() const { return line_no_; }

 private:
  std::optional<TweetRecord> parse_line(const std::string &line,
                                        std::string *why);

  std::ifstream file_;
  std::istream *in_;
  OnError policy_;
  std::size_t line_no_ = 0;
  std::size_t skipped_ = 0;
  std::size_t records_ = 0;
  std::unordered_set<std::string> seen_ids_;
};

// Convenience wrapper that materializes the whole file.
std::vector<TweetRecord> load_tweets(const std::string &path, OnError policy,
                                     std::size_t *skipped = nullptr);

// Abbreviations that never end a sentence (lowercase, with trailing period).
const std::vector<std::string> &sentence_abbreviations();

// Breaks text into sentences after runs of '.', '!' or '?' that are followed
// by whitespace or the end of text, unless the word carrying the period is a
// known abbreviation, and at every newline. Sentences are trimmed; empty ones
// are dropped.
std::vector<std::string> split_sentences(std::string_view text);

// The literal token substituted for URLs.
inline constexpr std::string_view kUrlToken = "URL";

// Social-media tokenizer. Rules, in order of precedence at each position:
//   1. http://, https:// and www. spans run to the next whitespace (minus
//      trailing punctuation) and become "URL".
//   2. '#' or '@' directly followed by a word character starts a hashtag or
//      mention, kept whole.
//   3. Runs of word characters (ASCII alphanumerics, '_', non-ASCII letters)
//      form one token; '-' and '\'' with word characters on both sides stay
//      inside the token.
//   4. Emoji and pictographic symbols become one token each.
//   5. Every other ASCII punctuation character is its own token.
// Tokens are ASCII-lowercased except the "URL" placeholder.
std::vector<std::string> tokenize(std::string_view sentence);

// split_sentences + tokenize for one tweet; sentences without tokens are
// dropped and the remaining ones numbered from 0.
std::vector<TokenSentence> tokenize_tweet(const TweetRecord &tweet);

// Tokenized corpus file: "tweet_id<TAB>sentence_index<TAB>tok tok ..." per
// line.
void write_token_sentence(std::ostream &out, const TokenSentence &sentence);
std::vector<TokenSentence> read_token_corpus(const std::string &path);
std::vector<TokenSentence> read_token_corpus(std::istream &in);

}  // namespace needstack

#endif  // NEEDSTACK_CORPUS_H_
