#include "needstack/conllu.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "needstack/error.h"
#include "needstack/text_util.h"

namespace needstack {

std::vector<int> DepSentence::children(int index) const {
  std::vector<int> out;
  for (const DepToken &t : tokens) {
    if (t.head == index) out.push_back(t.index);
  }
  return out;
}

namespace {

bool parse_int(const std::string &s, int *out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && p == s.data() + s.size();
}

class Builder {
 public:
  explicit Builder(std::vector<DepSentence> &out) : out_(out) {}

  void comment(const std::string &line) {
    auto value_of = [&](std::string_view key) -> std::optional<std::string> {
      std::string_view body = trim(std::string_view(line).substr(1));
      if (body.substr(0, key.size()) != key) return std::nullopt;
      body = trim(body.substr(key.size()));
      if (body.empty() || body[0] != '=') return std::nullopt;
      return std::string(trim(body.substr(1)));
    };
    if (auto id = value_of("sent_id")) {
      current_.sent_id = *id;
    } else if (auto text = value_of("text")) {
      current_.text = *text;
    }
    open_ = true;
  }

  void token(const std::vector<std::string> &cols, std::size_t line_no) {
    if (cols[0].find('-') != std::string::npos ||
        cols[0].find('.') != std::string::npos) {
      open_ = true;
      return;
    }
    DepToken t;
    if (!parse_int(cols[0], &t.index) ||
        t.index != static_cast<int>(current_.tokens.size()) + 1) {
      throw ParseError("bad or out-of-sequence token id '" + cols[0] + "'",
                       line_no);
    }
    t.form = cols[1];
    t.lemma = cols[2];
    t.upos = cols[3];
    if (!parse_int(cols[6], &t.head) || t.head < 0) {
      throw ParseError("HEAD '" + cols[6] + "' is not a non-negative integer",
                       line_no);
    }
    if (t.head == t.index) throw ParseError("token is its own head", line_no);
    t.deprel = cols[7];
    current_.tokens.push_back(std::move(t));
    lines_.push_back(line_no);
    open_ = true;
  }

  void finish() {
    if (!open_) return;
    ++ordinal_;
    if (!current_.tokens.empty()) {
      validate();
      if (current_.sent_id.empty()) {
        current_.sent_id = "s" + std::to_string(ordinal_);
      }
      out_.push_back(std::move(current_));
    }
    current_ = DepSentence{};
    lines_.clear();
    open_ = false;
  }

 private:
  void validate() const {
    const int n = current_.size();
    for (int i = 0; i < n; ++i) {
      if (current_.tokens[i].head > n) {
        throw ParseError("HEAD " + std::to_string(current_.tokens[i].head) +
                             " out of range for " + std::to_string(n) +
                             "-token sentence",
                         lines_[i]);
      }
    }
    // Every token must reach 0 within n steps.
    std::vector<int> state(n + 1, 0);  // 0 unvisited, 1 on path, 2 done
    state[0] = 2;
    for (int start = 1; start <= n; ++start) {
      int v = start;
      std::vector<int> path;
      while (state[v] == 0) {
        state[v] = 1;
        path.push_back(v);
        v = current_.at(v).head;
      }
      if (state[v] == 1) {
        throw ParseError("cycle in dependency heads", lines_[v - 1]);
      }
      for (int p : path) state[p] = 2;
    }
  }

  std::vector<DepSentence> &out_;
  DepSentence current_;
  std::vector<std::size_t> lines_;
  bool open_ = false;
  int ordinal_ = 0;
};

}  // namespace

std::vector<DepSentence> parse_conllu(std::istream &in) {
  std::vector<DepSentence> out;
  Builder builder(out);
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      builder.finish();
      continue;
    }
    if (line[0] == '#') {
      builder.comment(line);
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError(
          "expected 10 columns, found " + std::to_string(cols.size()),
          line_no);
    }
    builder.token(cols, line_no);
  }
  builder.finish();
  if (in.bad()) throw IoError("read error in CoNLL-U input");
  return out;
}

std::vector<DepSentence> parse_conllu_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open CoNLL-U file '" + path + "'");
  return parse_conllu(in);
}

void write_conllu(std::ostream &out, const DepSentence &sentence) {
  if (!sentence.sent_id.empty()) out << "# sent_id = " << sentence.sent_id << '\n';
  if (!sentence.text.empty()) out << "# text = " << sentence.text << '\n';
  for (const DepToken &t : sentence.tokens) {
    out << t.index << '\t' << t.form << '\t' << (t.lemma.empty() ? "_" : t.lemma)
        << '\t' << t.upos << "\t_\t_\t" << t.head << '\t' << t.deprel
        << "\t_\t_\n";
  }
  out << '\n';
}

}  // namespace needstack
