#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace textmf::utf8 {

/// Decodes a UTF-8 byte string into code points. Invalid byte sequences
/// decode to U+FFFD, one replacement per rejected byte, so decoding is total
/// and deterministic on arbitrary input.
std::vector<char32_t> decode(std::string_view bytes);

/// Appends the UTF-8 encoding of cp to out.
void encode(char32_t cp, std::string& out);

std::string encode(const std::vector<char32_t>& cps);

/// Letter test over the Unicode ranges that occur in practice in Wikipedia
/// text: Latin (plus supplements and extensions), Greek, Cyrillic, Hebrew,
/// Arabic, CJK, Kana and Hangul. Code points outside these ranges are
/// treated as non-letters.
bool is_alpha(char32_t cp);

/// Simple (one-to-one) lowercase mapping for ASCII, Latin-1, Latin
/// Extended-A, Greek and Cyrillic. Everything else maps to itself.
char32_t to_lower(char32_t cp);

}  // namespace textmf::utf8
