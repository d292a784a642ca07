#include "typoline/unicode.hpp"

#include <algorithm>

namespace typoline::unicode {

namespace {

struct DecompEntry { uint32_t cp, first, second; };
struct CccEntry { uint32_t cp; uint8_t ccc; };
struct CompEntry { uint32_t first, second, composed; };
struct LowerEntry { uint32_t cp, lower; };
struct Interval { uint32_t lo, hi; };

#include "unicode_tables.inc"

// Hangul syllable arithmetic (UAX #15 section 3.12).
constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161,
                   kTBase = 0x11A7;
constexpr int kLCount = 19, kVCount = 21, kTCount = 28;
constexpr int kNCount = kVCount * kTCount;
constexpr int kSCount = kLCount * kNCount;

uint8_t combining_class(char32_t cp) {
  auto it = std::lower_bound(std::begin(kCcc), std::end(kCcc), cp,
                             [](const CccEntry& e, char32_t c) { return e.cp < c; });
  if (it != std::end(kCcc) && it->cp == static_cast<uint32_t>(cp)) return it->ccc;
  return 0;
}

void decompose_cp(char32_t cp, std::vector<char32_t>& out) {
  if (cp >= kSBase && cp < kSBase + kSCount) {
    int s = static_cast<int>(cp - kSBase);
    out.push_back(kLBase + s / kNCount);
    out.push_back(kVBase + (s % kNCount) / kTCount);
    if (s % kTCount != 0) out.push_back(kTBase + s % kTCount);
    return;
  }
  auto it = std::lower_bound(std::begin(kDecomp), std::end(kDecomp), cp,
                             [](const DecompEntry& e, char32_t c) { return e.cp < c; });
  if (it != std::end(kDecomp) && it->cp == static_cast<uint32_t>(cp)) {
    decompose_cp(it->first, out);
    if (it->second != 0) decompose_cp(it->second, out);
    return;
  }
  out.push_back(cp);
}

// 0 when no primary composite exists.
char32_t compose_pair(char32_t a, char32_t b) {
  if (a >= kLBase && a < kLBase + kLCount && b >= kVBase && b < kVBase + kVCount)
    return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
  if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 &&
      b > kTBase && b < kTBase + kTCount)
    return a + (b - kTBase);
  auto it = std::lower_bound(
      std::begin(kComp), std::end(kComp), std::pair<char32_t, char32_t>{a, b},
      [](const CompEntry& e, const std::pair<char32_t, char32_t>& k) {
        return e.first != k.first ? e.first < k.first : e.second < k.second;
      });
  if (it != std::end(kComp) && it->first == static_cast<uint32_t>(a) &&
      it->second == static_cast<uint32_t>(b))
    return it->composed;
  return 0;
}

std::vector<char32_t> nfc_codepoints(const std::vector<char32_t>& in) {
  std::vector<char32_t> d;
  d.reserve(in.size());
  for (char32_t cp : in) decompose_cp(cp, d);

  // Canonical ordering: stable bubble of nonzero-ccc runs.
  for (size_t i = 1; i < d.size(); ++i) {
    uint8_t c = combining_class(d[i]);
    if (c == 0) continue;
    size_t j = i;
    while (j > 0 && combining_class(d[j - 1]) > c) {
      std::swap(d[j - 1], d[j]);
      --j;
    }
  }

  // Composition pass. A character composes with the last starter unless a
  // character of equal or higher combining class sits in between.
  std::vector<char32_t> out;
  out.reserve(d.size());
  ptrdiff_t starter = -1;
  uint8_t last_ccc = 0;
  for (char32_t cp : d) {
    uint8_t c = combining_class(cp);
    if (starter >= 0) {
      bool adjacent = out.size() == static_cast<size_t>(starter) + 1;
      if (adjacent || last_ccc < c) {
        char32_t comp = compose_pair(out[starter], cp);
        if (comp != 0) {
          out[starter] = comp;
          continue;
        }
      }
    }
    if (c == 0) starter = static_cast<ptrdiff_t>(out.size());
    last_ccc = c;
    out.push_back(cp);
  }
  return out;
}

}  // namespace

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char b = s[i];
    char32_t cp = 0;
    int len = 0;
    if (b < 0x80) { cp = b; len = 1; }
    else if ((b & 0xE0) == 0xC0) { cp = b & 0x1F; len = 2; }
    else if ((b & 0xF0) == 0xE0) { cp = b & 0x0F; len = 3; }
    else if ((b & 0xF8) == 0xF0) { cp = b & 0x07; len = 4; }
    else { out.push_back(0xFFFD); ++i; continue; }
    if (i + len > s.size()) { out.push_back(0xFFFD); ++i; continue; }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      unsigned char c = s[i + k];
      if ((c & 0xC0) != 0x80) { ok = false; break; }
      cp = (cp << 6) | (c & 0x3F);
    }
    if (!ok || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

std::string nfc(std::string_view s) {
  // Fast path: pure ASCII is NFC already.
  if (std::all_of(s.begin(), s.end(),
                  [](char c) { return static_cast<unsigned char>(c) < 0x80; }))
    return std::string(s);
  return encode_utf8(nfc_codepoints(decode_utf8(s)));
}

std::string fold_case(std::string_view s) {
  std::vector<char32_t> cps = decode_utf8(nfc(s));
  for (char32_t& cp : cps) {
    if (cp < 0x80) {
      if (cp >= 'A' && cp <= 'Z') cp += 32;
      continue;
    }
    auto it = std::lower_bound(std::begin(kLower), std::end(kLower), cp,
                               [](const LowerEntry& e, char32_t c) { return e.cp < c; });
    if (it != std::end(kLower) && it->cp == static_cast<uint32_t>(cp)) cp = it->lower;
  }
  return encode_utf8(cps);
}

bool is_punctuation_only(std::string_view s) {
  if (s.empty()) return false;
  for (char32_t cp : decode_utf8(s)) {
    auto it = std::lower_bound(std::begin(kPunct), std::end(kPunct), cp,
                               [](const Interval& iv, char32_t c) { return iv.hi < c; });
    if (it == std::end(kPunct) || cp < it->lo) return false;
  }
  return true;
}

}  // namespace typoline::unicode
