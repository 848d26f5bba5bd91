#ifndef NEEDSTACK_WNW_H_
#define NEEDSTACK_WNW_H_

// Who-needs-what extraction over dependency trees.
//
// Rule 1 (need as a verb): a need verb with a subject dependent on its left
// and a direct-object dependent on its right.
// Rule 2 (need as a noun, "X is in need of Y"): the who hangs off the
// copular verb above need, the what is linked to need through a preposition.

#include <iosfwd>
#include <string>
#include <string_view>
#include <span>
#include <utility>
#include <vector>

#include "needstack/conllu.h"

namespace needstack {

// Concrete deprel strings for the roles the rules look at.
struct LabelScheme {
  std::string name;
  std::string subject;
  std::string direct_object;
  std::string preposition;
  std::string prep_object;
  std::string copula;
  std::string nmod;
  std::string case_marker;

  // ClearNLP-style labels (nsubj, dobj, prep, pobj); the copula heads its
  // clause there, so `copula` names the predicate-nominal label and is not
  // consulted by the rules.
  static LabelScheme clear();
  // Universal Dependencies v2 labels (nsubj, obj, case, nmod, cop).
  static LabelScheme ud();
  // Throws ConfigError for anything but "clear" or "ud".
  static LabelScheme by_name(std::string_view name);
};

enum class Rule { kR1, kR2 };
std::string_view rule_name(Rule rule);

struct NeedTriple {
  std::string sent_id;
  Rule rule = Rule::kR1;
  int who_head = 0;
  std::string who_text;
  int need_index = 0;
  std::string need_form;
  int what_head = 0;
  std::string what_text;
};

struct MatchOptions {
  // Require who in {NOUN, PROPN, PRON} and what in {NOUN, PROPN} (rule 1).
  bool strict_pos = false;
  // Also trigger on tokens whose lemma is "need" but whose surface form is
  // not one of the four need forms.
  bool lemma_trigger = false;
};

// need, needs, needing, needed
const std::vector<std::string> &need_forms();
bool is_need_token(const DepToken &token, bool lemma_trigger = false);

// Forms of the head's subtree in index order, space-joined. The subtree of
// `skip` (a dependent of head, 0 for none) is left out.
std::string subtree_yield(const DepSentence &sentence, int head, int skip = 0);

std::vector<NeedTriple> match_rule1(const DepSentence &sentence,
                                    const LabelScheme &scheme,
                                    const MatchOptions &options = {});
std::vector<NeedTriple> match_rule2(const DepSentence &sentence,
                                    const LabelScheme &scheme,
                                    const MatchOptions &options = {});

struct Extraction {
  std::vector<NeedTriple> triples;
  // One (sent_id, has-triple) entry per input sentence, in input order.
  std::vector<std::pair<std::string, bool>> labels;
};

// Rule 1 then rule 2 on every sentence, deduplicated on
// (sent_id, who_head, need_index, what_head) keeping the first.
Extraction extract_triples(std::span<const DepSentence> sentences,
                           const LabelScheme &scheme,
                           const MatchOptions &options = {});

// "sent_id rule who_text need_form what_text who_head need_index what_head",
// tab-separated.
void write_triples(std::ostream &out, const std::vector<NeedTriple> &triples);
// "sent_id<TAB>0|1".
void write_labels(std::ostream &out,
                  const std::vector<std::pair<std::string, bool>> &labels);

}  // namespace needstack

#endif  // NEEDSTACK_WNW_H_
