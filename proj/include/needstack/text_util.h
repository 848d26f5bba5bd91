#ifndef NEEDSTACK_TEXT_UTIL_H_
#define NEEDSTACK_TEXT_UTIL_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace needstack {

// ASCII-only case folding; bytes >= 0x80 are left untouched.
std::string to_lower_ascii(std::string_view s);

bool is_space_ascii(char c);
std::string_view trim(std::string_view s);

// Splits on every occurrence of sep; empty fields are kept.
std::vector<std::string> split(std::string_view s, char sep);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> split_whitespace(std::string_view s);

std::string join(const std::vector<std::string> &parts, std::string_view sep);

// Length in bytes of the UTF-8 sequence starting at s[pos], and the decoded
// code point. Invalid bytes decode as a single byte with code point 0xFFFD.
std::size_t utf8_next(std::string_view s, std::size_t pos, char32_t *cp);

// getline that also drops a trailing '\r'.
bool read_line(std::istream &in, std::string &line);

// Shortest decimal representation that round-trips the value.
std::string format_double(double v);

// Fixed-point with the given number of decimals.
std::string format_fixed(double v, int decimals);

}  // namespace needstack

#endif  // NEEDSTACK_TEXT_UTIL_H_
