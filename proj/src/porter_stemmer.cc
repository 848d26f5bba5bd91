#include "needstack/porter_stemmer.h"

#include <algorithm>
#include <initializer_list>
#include <utility>

namespace needstack {

namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : w_(word) {}

  std::string run() {
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return w_;
  }

 private:
  using Rule = std::pair<std::string_view, std::string_view>;

  bool consonant(std::size_t i) const {
    switch (w_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  // m in [C](VC)^m[V] over the first `len` letters.
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, the last not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) {
      return false;
    }
    char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view suffix) const {
    return w_.size() >= suffix.size() &&
           std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
  }

  std::size_t stem_len(std::string_view suffix) const {
    return w_.size() - suffix.size();
  }

  void replace(std::string_view suffix, std::string_view with) {
    w_.resize(stem_len(suffix));
    w_ += with;
  }

  // Longest matching suffix wins; when its condition fails the step ends.
  template <typename Cond>
  void apply_longest(std::initializer_list<Rule> rules, Cond cond) {
    const Rule *best = nullptr;
    for (const Rule &r : rules) {
      if (ends(r.first) && (!best || r.first.size() > best->first.size())) {
        best = &r;
      }
    }
    if (best && cond(stem_len(best->first), best->first)) {
      replace(best->first, best->second);
    }
  }

  void step1a() {
    if (ends("sses")) {
      replace("sses", "ss");
    } else if (ends("ies")) {
      replace("ies", "i");
    } else if (ends("ss")) {
      // unchanged
    } else if (ends("s")) {
      replace("s", "");
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(stem_len("eed")) > 0) replace("eed", "ee");
      return;
    }
    bool stripped = false;
    for (std::string_view suffix : {"ed", "ing"}) {
      if (ends(suffix) && has_vowel(stem_len(suffix))) {
        replace(suffix, "");
        stripped = true;
        break;
      }
    }
    if (!stripped) return;
    if (ends("at")) {
      replace("at", "ate");
    } else if (ends("bl")) {
      replace("bl", "ble");
    } else if (ends("iz")) {
      replace("iz", "ize");
    } else if (double_consonant(w_.size())) {
      char c = w_.back();
      if (c != 'l' && c != 's' && c != 'z') w_.pop_back();
    } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
      w_ += 'e';
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(stem_len("y"))) w_.back() = 'i';
  }

  void step2() {
    apply_longest(
        {{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
         {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
         {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
         {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
         {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
         {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
         {"iviti", "ive"},   {"biliti", "ble"}},
        [this](std::size_t len, std::string_view) { return measure(len) > 0; });
  }

  void step3() {
    apply_longest(
        {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
         {"ical", "ic"}, {"ful", ""}, {"ness", ""}},
        [this](std::size_t len, std::string_view) { return measure(len) > 0; });
  }

  void step4() {
    apply_longest(
        {{"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},   {"ic", ""},
         {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
         {"ent", ""},  {"ion", ""},  {"ou", ""},   {"ism", ""},  {"ate", ""},
         {"iti", ""},  {"ous", ""},  {"ive", ""},  {"ize", ""}},
        [this](std::size_t len, std::string_view suffix) {
          if (measure(len) <= 1) return false;
          if (suffix == "ion") {
            return len > 0 && (w_[len - 1] == 's' || w_[len - 1] == 't');
          }
          return true;
        });
  }

  void step5a() {
    if (!ends("e")) return;
    std::size_t len = stem_len("e");
    int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) w_.pop_back();
  }

  void step5b() {
    if (measure(w_.size()) > 1 && double_consonant(w_.size()) &&
        w_.back() == 'l') {
      w_.pop_back();
    }
  }

  std::string w_;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.empty() || !std::all_of(word.begin(), word.end(), [](char c) {
        return c >= 'a' && c <= 'z';
      })) {
    return std::string(word);
  }
  return Stemmer(word).run();
}

}  // namespace needstack
