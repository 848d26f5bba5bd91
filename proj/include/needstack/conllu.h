#ifndef NEEDSTACK_CONLLU_H_
#define NEEDSTACK_CONLLU_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace needstack {

struct DepToken {
  int index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = root
  std::string deprel;
};

struct DepSentence {
  std::string sent_id;
  std::vector<DepToken> tokens;
  std::string text;

  int size() const { return static_cast<int>(tokens.size()); }
  // 1-based access.
  const DepToken &at(int index) const { return tokens[index - 1]; }
  // Dependents of `index` (0 for the root's dependents), ascending.
  std::vector<int> children(int index) const;
};

// Reads CoNLL-U. Sentence ids come from "# sent_id = ..." comments, else
// "s<N>" with N the 1-based sentence ordinal; "# text = ..." fills text.
// Multiword range lines ("1-2") and empty nodes ("1.1") are skipped. Throws
// ParseError with the line number for a column count other than 10,
// non-integer or out-of-sequence ids, a non-integer or out-of-range HEAD, a
// self-loop, or heads that do not form a tree rooted at 0.
std::vector<DepSentence> parse_conllu(std::istream &in);
std::vector<DepSentence> parse_conllu_file(const std::string &path);

// Writes one sentence block (comments, token lines, blank line). Columns
// other than ID, FORM, LEMMA, UPOS, HEAD and DEPREL are written as "_".
void write_conllu(std::ostream &out, const DepSentence &sentence);

}  // namespace needstack

#endif  // NEEDSTACK_CONLLU_H_
