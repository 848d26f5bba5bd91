#include "needstack/wnw.h"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <set>
#include <tuple>

#include "needstack/error.h"
#include "needstack/text_util.h"

namespace needstack {

LabelScheme LabelScheme::clear() {
  return {"clear", "nsubj", "dobj", "prep", "pobj", "attr", "pobj", "prep"};
}

LabelScheme LabelScheme::ud() {
  return {"ud", "nsubj", "obj", "case", "nmod", "cop", "nmod", "case"};
}

LabelScheme LabelScheme::by_name(std::string_view name) {
  if (name == "clear") return clear();
  if (name == "ud") return ud();
  throw ConfigError("scheme must be 'clear' or 'ud', got '" +
                    std::string(name) + "'");
}

std::string_view rule_name(Rule rule) {
  return rule == Rule::kR1 ? "R1" : "R2";
}

const std::vector<std::string> &need_forms() {
  static const std::vector<std::string> kForms = {"need", "needs", "needing",
                                                  "needed"};
  return kForms;
}

bool is_need_token(const DepToken &token, bool lemma_trigger) {
  const auto &forms = need_forms();
  std::string form = to_lower_ascii(token.form);
  if (std::find(forms.begin(), forms.end(), form) != forms.end()) return true;
  return lemma_trigger && to_lower_ascii(token.lemma) == "need";
}

std::string subtree_yield(const DepSentence &sentence, int head, int skip) {
  const int n = sentence.size();
  std::vector<bool> in(n + 1, false);
  std::vector<bool> out_of(n + 1, false);
  in[head] = true;
  if (skip > 0 && skip != head) out_of[skip] = true;
  // Heads may point forward, so iterate to a fixed point.
  for (bool changed = true; changed;) {
    changed = false;
    for (const DepToken &t : sentence.tokens) {
      if (!in[t.index] && !out_of[t.index] && t.head != 0 && in[t.head]) {
        in[t.index] = true;
        changed = true;
      }
    }
  }
  std::string out;
  for (const DepToken &t : sentence.tokens) {
    if (!in[t.index]) continue;
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

namespace {

bool upos_in(const DepToken &t, std::initializer_list<std::string_view> tags) {
  return std::find(tags.begin(), tags.end(), t.upos) != tags.end();
}

// Dependent of `head` with the given deprel closest to `head`, restricted to
// one side when side is -1 (left) or +1 (right). Equal distances prefer the
// right. Returns 0 when none qualifies.
template <typename Pred>
int nearest_child(const DepSentence &s, int head, const std::string &deprel,
                  int side, Pred extra) {
  int best = 0;
  for (const DepToken &t : s.tokens) {
    if (t.head != head || t.deprel != deprel) continue;
    if (side < 0 && t.index > head) continue;
    if (side > 0 && t.index < head) continue;
    if (!extra(t)) continue;
    if (best == 0) {
      best = t.index;
      continue;
    }
    int d_new = std::abs(t.index - head), d_old = std::abs(best - head);
    if (d_new < d_old || (d_new == d_old && t.index > best)) best = t.index;
  }
  return best;
}

int nearest_child(const DepSentence &s, int head, const std::string &deprel,
                  int side = 0) {
  return nearest_child(s, head, deprel, side, [](const DepToken &) {
    return true;
  });
}

NeedTriple make_triple(const DepSentence &s, Rule rule, int who, int need,
                       int what, int what_skip = 0) {
  return {s.sent_id,       rule, who,  subtree_yield(s, who),
          need,            s.at(need).form,
          what,            subtree_yield(s, what, what_skip)};
}

}  // namespace

std::vector<NeedTriple> match_rule1(const DepSentence &sentence,
                                    const LabelScheme &scheme,
                                    const MatchOptions &options) {
  std::vector<NeedTriple> out;
  auto who_ok = [&](const DepToken &t) {
    return !options.strict_pos || upos_in(t, {"NOUN", "PROPN", "PRON"});
  };
  auto what_ok = [&](const DepToken &t) {
    return !options.strict_pos || upos_in(t, {"NOUN", "PROPN"});
  };
  for (const DepToken &t : sentence.tokens) {
    if (t.upos != "VERB" || !is_need_token(t, options.lemma_trigger)) continue;
    int who = nearest_child(sentence, t.index, scheme.subject, -1, who_ok);
    if (who == 0) continue;
    int what =
        nearest_child(sentence, t.index, scheme.direct_object, +1, what_ok);
    if (what == 0) continue;
    out.push_back(make_triple(sentence, Rule::kR1, who, t.index, what));
  }
  return out;
}

std::vector<NeedTriple> match_rule2(const DepSentence &sentence,
                                    const LabelScheme &scheme,
                                    const MatchOptions &options) {
  std::vector<NeedTriple> out;
  const bool ud = scheme.name == "ud";
  for (const DepToken &n : sentence.tokens) {
    if (n.upos != "NOUN" || !is_need_token(n, options.lemma_trigger)) continue;
    int who = 0, what = 0, what_case = 0;
    if (ud) {
      // need heads the clause: who and the copula are its dependents, the
      // what is an nmod dependent carrying a case marker.
      if (nearest_child(sentence, n.index, scheme.copula) == 0) continue;
      who = nearest_child(sentence, n.index, scheme.subject);
      what = nearest_child(sentence, n.index, scheme.nmod, 0,
                           [&](const DepToken &w) {
                             return nearest_child(sentence, w.index,
                                                  scheme.case_marker) != 0;
                           });
      // The linking preposition is not part of the resource text.
      if (what != 0) {
        what_case = nearest_child(sentence, what, scheme.case_marker);
      }
    } else {
      // copula -> prep -> need (pobj), need -> prep -> what (pobj).
      if (n.deprel != scheme.prep_object || n.head == 0) continue;
      const DepToken &prep = sentence.at(n.head);
      if (prep.deprel != scheme.preposition || prep.head == 0) continue;
      const int copula = prep.head;
      who = nearest_child(sentence, copula, scheme.subject);
      int best_prep_distance = 0;
      for (int q : sentence.children(n.index)) {
        if (sentence.at(q).deprel != scheme.preposition) continue;
        int w = nearest_child(sentence, q, scheme.prep_object);
        if (w == 0) continue;
        int d = std::abs(q - n.index);
        if (what == 0 || d < best_prep_distance) {
          what = w;
          best_prep_distance = d;
        }
      }
    }
    if (who == 0 || what == 0 || who == what) continue;
    out.push_back(
        make_triple(sentence, Rule::kR2, who, n.index, what, what_case));
  }
  return out;
}

Extraction extract_triples(std::span<const DepSentence> sentences,
                           const LabelScheme &scheme,
                           const MatchOptions &options) {
  Extraction ex;
  ex.labels.reserve(sentences.size());
  for (const DepSentence &s : sentences) {
    std::set<std::tuple<int, int, int>> seen;
    bool any = false;
    auto take = [&](std::vector<NeedTriple> found) {
      for (NeedTriple &t : found) {
        if (!seen.emplace(t.who_head, t.need_index, t.what_head).second) {
          continue;
        }
        any = true;
        ex.triples.push_back(std::move(t));
      }
    };
    take(match_rule1(s, scheme, options));
    take(match_rule2(s, scheme, options));
    ex.labels.emplace_back(s.sent_id, any);
  }
  return ex;
}

void write_triples(std::ostream &out, const std::vector<NeedTriple> &triples) {
  for (const NeedTriple &t : triples) {
    out << t.sent_id << '\t' << rule_name(t.rule) << '\t' << t.who_text << '\t'
        << t.need_form << '\t' << t.what_text << '\t' << t.who_head << '\t'
        << t.need_index << '\t' << t.what_head << '\n';
  }
}

void write_labels(std::ostream &out,
                  const std::vector<std::pair<std::string, bool>> &labels) {
  for (const auto &[id, positive] : labels) {
    out << id << '\t' << (positive ? 1 : 0) << '\n';
  }
}

}  // namespace needstack
