#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace typoline::unicode {

// Decodes UTF-8, replacing invalid sequences with U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view s);

std::string encode_utf8(const std::vector<char32_t>& cps);
void append_utf8(std::string& out, char32_t cp);

// Canonical composition (NFC).
std::string nfc(std::string_view s);

// NFC followed by per-codepoint simple lowercasing.
std::string fold_case(std::string_view s);

// True if non-empty and every codepoint has general category P*.
bool is_punctuation_only(std::string_view s);

}  // namespace typoline::unicode
