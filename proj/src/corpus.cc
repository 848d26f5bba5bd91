#include "needstack/corpus.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "needstack/error.h"
#include "needstack/text_util.h"

namespace needstack {

OnError parse_on_error(std::string_view name) {
  if (name == "skip") return OnError::kSkip;
  if (name == "fail") return OnError::kFail;
  throw ConfigError("on-error must be 'skip' or 'fail', got '" +
                    std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// TweetReader

TweetReader::TweetReader(const std::string &path, OnError policy)
    : file_(path, std::ios::binary), in_(&file_), policy_(policy) {
  if (!file_) throw IoError("cannot open tweet file '" + path + "'");
}

TweetReader::TweetReader(std::istream &in, OnError policy)
    : in_(&in), policy_(policy) {}

std::optional<TweetRecord> TweetReader::parse_line(const std::string &line,
                                                   std::string *why) {
  using nlohmann::json;
  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) {
    *why = "not valid JSON";
    return std::nullopt;
  }
  if (!obj.is_object()) {
    *why = "not a JSON object";
    return std::nullopt;
  }
  TweetRecord rec;
  auto id = obj.find("id");
  if (id == obj.end()) {
    *why = "missing \"id\"";
    return std::nullopt;
  }
  if (id->is_string()) {
    rec.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    rec.id = id->dump();
  } else {
    *why = "\"id\" is not a string";
    return std::nullopt;
  }
  if (rec.id.empty() || rec.id.find_first_of("\t\n\r") != std::string::npos) {
    *why = "\"id\" is empty or contains a tab or newline";
    return std::nullopt;
  }
  auto text = obj.find("text");
  if (text == obj.end() || !text->is_string()) {
    *why = "missing string \"text\"";
    return std::nullopt;
  }
  rec.text = text->get<std::string>();
  if (trim(rec.text).empty()) {
    *why = "blank \"text\"";
    return std::nullopt;
  }
  for (auto [key, slot] : {std::pair{"timestamp", &rec.timestamp},
                           std::pair{"lang", &rec.lang}}) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) continue;
    if (!it->is_string()) {
      *why = std::string("\"") + key + "\" is not a string";
      return std::nullopt;
    }
    *slot = it->get<std::string>();
  }
  if (!seen_ids_.insert(rec.id).second) {
    *why = "duplicate id '" + rec.id + "'";
    return std::nullopt;
  }
  return rec;
}

std::optional<TweetRecord> TweetReader::next() {
  std::string line;
  while (read_line(*in_, line)) {
    ++line_no_;
    if (trim(line).empty()) continue;
    std::string why;
    std::optional<TweetRecord> rec;
    try {
      rec = parse_line(line, &why);
    } catch (const nlohmann::json::exception &e) {
      why = e.what();
    }
    if (rec) {
      ++records_;
      return rec;
    }
    if (policy_ == OnError::kFail) {
      throw ParseError("malformed tweet: " + why, line_no_);
    }
    ++skipped_;
  }
  if (in_->bad()) throw IoError("read error in tweet file");
  return std::nullopt;
}

std::vector<TweetRecord> load_tweets(const std::string &path, OnError policy,
                                     std::size_t *skipped) {
  TweetReader reader(path, policy);
  std::vector<TweetRecord> out;
  while (auto rec = reader.next()) out.push_back(std::move(*rec));
  if (skipped) *skipped = reader.skipped();
  return out;
}

// ---------------------------------------------------------------------------
// Sentence splitting

const std::vector<std::string> &sentence_abbreviations() {
  static const std::vector<std::string> kList = {
      "dr.", "mr.", "mrs.", "ms.", "st.", "vs.", "u.s.", "e.g.", "i.e."};
  return kList;
}

namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

bool is_alnum_ascii(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

// The whitespace-delimited word ending at `end` (exclusive), with leading
// non-alphanumerics removed, lowercased.
std::string word_before(std::string_view text, std::size_t end) {
  std::size_t b = end;
  while (b > 0 && !is_space_ascii(text[b - 1])) --b;
  while (b < end && !is_alnum_ascii(text[b])) ++b;
  return to_lower_ascii(text.substr(b, end - b));
}

void push_sentence(std::vector<std::string> &out, std::string_view piece) {
  std::string_view t = trim(piece);
  if (!t.empty()) out.emplace_back(t);
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  const auto &abbrevs = sentence_abbreviations();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      push_sentence(out, text.substr(start, i - start));
      start = ++i;
      continue;
    }
    if (!is_terminal(c)) {
      ++i;
      continue;
    }
    std::size_t run_begin = i;
    while (i < text.size() && is_terminal(text[i])) ++i;
    while (i < text.size() && is_closer(text[i])) ++i;
    bool at_break = i == text.size() || is_space_ascii(text[i]);
    if (!at_break) continue;
    if (i - run_begin == 1 && text[run_begin] == '.') {
      std::string word = word_before(text, run_begin + 1);
      if (std::find(abbrevs.begin(), abbrevs.end(), word) != abbrevs.end()) {
        continue;
      }
    }
    push_sentence(out, text.substr(start, i - start));
    start = i;
  }
  push_sentence(out, text.substr(start));
  return out;
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

bool is_space_cp(char32_t cp) {
  if (cp < 0x80) return is_space_ascii(static_cast<char>(cp));
  return cp == 0x00A0 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000 ||
         cp == 0x0085;
}

bool is_emoji_cp(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) || (cp >= 0x2600 && cp <= 0x27BF) ||
         (cp >= 0x2300 && cp <= 0x23FF) || (cp >= 0x2B00 && cp <= 0x2BFF);
}

bool is_emoji_modifier(char32_t cp) {
  return cp == 0xFE0F || cp == 0xFE0E || (cp >= 0x1F3FB && cp <= 0x1F3FF) ||
         cp == 0x20E3;
}

// Non-ASCII general punctuation, except the right single quote which acts as
// an apostrophe.
bool is_unicode_punct(char32_t cp) {
  if (cp == 0x2019) return false;
  return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
         (cp >= 0x00A1 && cp <= 0x00BF && cp != 0x00AA && cp != 0x00B5 &&
          cp != 0x00BA) ||
         (cp >= 0x3001 && cp <= 0x3003);
}

bool is_word_cp(char32_t cp) {
  if (cp < 0x80) {
    char c = static_cast<char>(cp);
    return is_alnum_ascii(c) || c == '_';
  }
  return !is_space_cp(cp) && !is_emoji_cp(cp) && !is_unicode_punct(cp) &&
         cp != 0x2019;
}

bool is_joiner_cp(char32_t cp) {
  return cp == '-' || cp == '\'' || cp == 0x2019;
}

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  std::vector<std::string> run() {
    while (pos_ < s_.size()) step();
    return std::move(tokens_);
  }

 private:
  char32_t peek(std::size_t at, std::size_t *len) const {
    char32_t cp;
    *len = utf8_next(s_, at, &cp);
    return cp;
  }

  bool word_at(std::size_t at) const {
    if (at >= s_.size()) return false;
    std::size_t len;
    return is_word_cp(peek(at, &len));
  }

  // End of the word run starting at `at`, allowing internal joiners.
  std::size_t word_end(std::size_t at) const {
    std::size_t i = at;
    while (i < s_.size()) {
      std::size_t len;
      char32_t cp = peek(i, &len);
      if (is_word_cp(cp)) {
        i += len;
      } else if (is_joiner_cp(cp) && i > at && word_at(i + len)) {
        i += len;
      } else {
        break;
      }
    }
    return i;
  }

  bool url_at(std::size_t at) const {
    char first = s_[at];
    if (first != 'h' && first != 'H' && first != 'w' && first != 'W') {
      return false;
    }
    if (at > 0) {
      // Only at a word boundary.
      std::size_t b = at - 1;
      while (b > 0 && (static_cast<unsigned char>(s_[b]) & 0xC0) == 0x80) --b;
      if (word_at(b)) return false;
    }
    auto starts = [&](std::string_view prefix) {
      if (s_.size() - at < prefix.size()) return false;
      return to_lower_ascii(s_.substr(at, prefix.size())) == prefix;
    };
    return starts("http://") || starts("https://") || starts("www.");
  }

  std::size_t url_end(std::size_t at) const {
    std::size_t e = at;
    while (e < s_.size()) {
      std::size_t len;
      if (is_space_cp(peek(e, &len))) break;
      e += len;
    }
    static constexpr std::string_view kTrail = ".,;:!?)]}'\"";
    while (e > at && kTrail.find(s_[e - 1]) != std::string_view::npos) --e;
    return e;
  }

  void emit(std::string_view tok) { tokens_.push_back(to_lower_ascii(tok)); }

  void step() {
    std::size_t len;
    char32_t cp = peek(pos_, &len);
    if (is_space_cp(cp)) {
      pos_ += len;
      return;
    }
    if (url_at(pos_)) {
      std::size_t e = url_end(pos_);
      if (e > pos_) {
        tokens_.emplace_back(kUrlToken);
        pos_ = e;
        return;
      }
    }
    if ((cp == '#' || cp == '@') && word_at(pos_ + 1)) {
      std::size_t e = word_end(pos_ + 1);
      emit(s_.substr(pos_, e - pos_));
      pos_ = e;
      return;
    }
    if (is_word_cp(cp)) {
      std::size_t e = word_end(pos_);
      std::string_view w = s_.substr(pos_, e - pos_);
      if (w == kUrlToken) {
        tokens_.emplace_back(kUrlToken);
      } else {
        emit(w);
      }
      pos_ = e;
      return;
    }
    if (is_emoji_cp(cp)) {
      std::size_t e = pos_ + len;
      while (e < s_.size()) {
        std::size_t l2;
        char32_t next = peek(e, &l2);
        if (is_emoji_modifier(next)) {
          e += l2;
        } else if (next == 0x200D && e + l2 < s_.size()) {
          std::size_t l3;
          if (!is_emoji_cp(peek(e + l2, &l3))) break;
          e += l2 + l3;
        } else {
          break;
        }
      }
      tokens_.emplace_back(s_.substr(pos_, e - pos_));
      pos_ = e;
      return;
    }
    // Punctuation: one code point per token.
    emit(s_.substr(pos_, len));
    pos_ += len;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> tokens_;
};

}  // namespace

std::vector<std::string> tokenize(std::string_view sentence) {
  return Scanner(sentence).run();
}

std::vector<TokenSentence> tokenize_tweet(const TweetRecord &tweet) {
  std::vector<TokenSentence> out;
  for (const std::string &s : split_sentences(tweet.text)) {
    std::vector<std::string> toks = tokenize(s);
    if (toks.empty()) continue;
    out.push_back(TokenSentence{tweet.id, std::move(toks),
                                static_cast<int>(out.size())});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tokenized corpus files

void write_token_sentence(std::ostream &out, const TokenSentence &sentence) {
  out << sentence.tweet_id << '\t' << sentence.index_in_tweet << '\t'
      << join(sentence.tokens, " ") << '\n';
}

std::vector<TokenSentence> read_token_corpus(std::istream &in) {
  std::vector<TokenSentence> out;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError("expected 3 tab-separated fields in tokenized corpus",
                       line_no);
    }
    TokenSentence s;
    s.tweet_id = fields[0];
    const std::string &idx = fields[1];
    auto [p, ec] =
        std::from_chars(idx.data(), idx.data() + idx.size(), s.index_in_tweet);
    if (ec != std::errc() || p != idx.data() + idx.size() ||
        s.index_in_tweet < 0) {
      throw ParseError("bad sentence index '" + idx + "'", line_no);
    }
    s.tokens = split_whitespace(fields[2]);
    if (s.tokens.empty()) throw ParseError("sentence has no tokens", line_no);
    out.push_back(std::move(s));
  }
  if (in.bad()) throw IoError("read error in tokenized corpus");
  return out;
}

std::vector<TokenSentence> read_token_corpus(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open tokenized corpus '" + path + "'");
  return read_token_corpus(in);
}

}  // namespace needstack
