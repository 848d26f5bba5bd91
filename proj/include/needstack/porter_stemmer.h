#ifndef NEEDSTACK_PORTER_STEMMER_H_
#define NEEDSTACK_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace needstack {

// Porter's 1980 suffix-stripping algorithm, steps 1a through 5b, applied to
// a lowercase ASCII word. Words containing anything other than a-z are
// returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace needstack

#endif  // NEEDSTACK_PORTER_STEMMER_H_
