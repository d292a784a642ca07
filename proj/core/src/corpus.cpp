#include "typoline/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "typoline/unicode.hpp"

namespace typoline {

namespace {

bool valid_id(std::string_view s) {
  return s.size() == 8 &&
         std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

constexpr std::array<std::string_view, kPosTagCount> kTagNames = {
    "ADJ", "ADV", "INTJ", "NOUN", "PROPN", "VERB",
    "ADP", "AUX", "CCONJ", "DET", "NUM", "PART", "PRON", "SCONJ",
    "PUNCT", "SYM", "X",
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Yields (line_number, content) for non-blank non-comment lines.
template <typename Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (!blank && line.front() != '#') fn(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

std::pair<VerseId, std::string_view> split_id_line(size_t line_no,
                                                   std::string_view line) {
  size_t tab = line.find('\t');
  if (tab == std::string_view::npos)
    throw Error(ErrorKind::MalformedLine,
                "line " + std::to_string(line_no) + ": missing ID<TAB> separator");
  std::string_view id_part = line.substr(0, tab);
  if (!valid_id(id_part))
    throw Error(ErrorKind::InvalidVerseId,
                "line " + std::to_string(line_no) + ": bad verse ID '" +
                    std::string(id_part) + "'");
  return {VerseId(id_part), line.substr(tab + 1)};
}

}  // namespace

std::optional<VerseId> VerseId::parse(std::string_view s) {
  if (!valid_id(s)) return std::nullopt;
  return VerseId(Unchecked{}, s);
}

VerseId::VerseId(std::string_view s) : id_(s) {
  if (!valid_id(s))
    throw Error(ErrorKind::InvalidVerseId, "invalid verse ID '" + id_ + "'");
}

std::optional<PosTag> parse_pos_tag(std::string_view s) {
  for (int i = 0; i < kPosTagCount; ++i)
    if (kTagNames[i] == s) return static_cast<PosTag>(i);
  return std::nullopt;
}

std::string_view to_string(PosTag t) { return kTagNames[static_cast<int>(t)]; }

std::vector<std::string> TaggedVerse::tokens() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.token);
  return out;
}

RawCorpus parse_verse_file(std::string_view text) {
  RawCorpus corpus;
  for_each_data_line(text, [&](size_t line_no, std::string_view line) {
    auto [id, rest] = split_id_line(line_no, line);
    auto parts = split_ws(rest);
    if (parts.empty())
      throw Error(ErrorKind::MalformedLine,
                  "line " + std::to_string(line_no) + ": verse has no tokens");
    RawVerse verse{id, {}};
    verse.tokens.reserve(parts.size());
    for (auto p : parts) verse.tokens.push_back(unicode::nfc(p));
    if (!corpus.verses.emplace(id, std::move(verse)).second)
      throw Error(ErrorKind::DuplicateVerseId,
                  "duplicate verse ID " + id.str());
  });
  return corpus;
}

TaggedCorpus parse_tagged_file(std::string_view text) {
  TaggedCorpus corpus;
  for_each_data_line(text, [&](size_t line_no, std::string_view line) {
    auto [id, rest] = split_id_line(line_no, line);
    auto units = split_ws(rest);
    if (units.empty())
      throw Error(ErrorKind::MalformedLine,
                  "line " + std::to_string(line_no) + ": verse has no tokens");
    TaggedVerse verse{id, {}};
    verse.entries.reserve(units.size());
    for (auto unit : units) {
      size_t slash = unit.rfind('/');
      if (slash == std::string_view::npos || slash == 0 ||
          slash == unit.size() - 1)
        throw Error(ErrorKind::MalformedUnit,
                    "line " + std::to_string(line_no) + ": bad token/TAG unit '" +
                        std::string(unit) + "'");
      auto tag = parse_pos_tag(unit.substr(slash + 1));
      if (!tag)
        throw Error(ErrorKind::UnknownTag,
                    "line " + std::to_string(line_no) + ": unknown tag '" +
                        std::string(unit.substr(slash + 1)) + "'");
      verse.entries.push_back({unicode::nfc(unit.substr(0, slash)), *tag});
    }
    if (!corpus.verses.emplace(id, std::move(verse)).second)
      throw Error(ErrorKind::DuplicateVerseId,
                  "duplicate verse ID " + id.str());
  });
  return corpus;
}

std::string serialize_verse_file(const RawCorpus& c) {
  std::string out;
  for (const auto& [id, verse] : c.verses) {
    out += id.str();
    char sep = '\t';
    for (const auto& tok : verse.tokens) {
      out += sep;
      out += tok;
      sep = ' ';
    }
    out += '\n';
  }
  return out;
}

std::string serialize_tagged_file(const TaggedCorpus& c) {
  std::string out;
  for (const auto& [id, verse] : c.verses) {
    out += id.str();
    char sep = '\t';
    for (const auto& e : verse.entries) {
      out += sep;
      out += e.token;
      out += '/';
      out += to_string(e.tag);
      sep = ' ';
    }
    out += '\n';
  }
  return out;
}

std::vector<VerseId> intersect_ids(
    const std::vector<std::vector<VerseId>>& id_lists) {
  if (id_lists.empty())
    throw std::invalid_argument("intersect_ids: empty input list");
  std::set<VerseId> acc(id_lists[0].begin(), id_lists[0].end());
  for (size_t k = 1; k < id_lists.size() && !acc.empty(); ++k) {
    std::set<VerseId> next(id_lists[k].begin(), id_lists[k].end());
    std::set<VerseId> kept;
    for (const auto& id : acc)
      if (next.count(id)) kept.insert(id);
    acc = std::move(kept);
  }
  return {acc.begin(), acc.end()};
}

std::vector<VerseId> corpus_ids(const RawCorpus& c) {
  std::vector<VerseId> out;
  out.reserve(c.verses.size());
  for (const auto& [id, _] : c.verses) out.push_back(id);
  return out;
}

std::vector<VerseId> corpus_ids(const TaggedCorpus& c) {
  std::vector<VerseId> out;
  out.reserve(c.verses.size());
  for (const auto& [id, _] : c.verses) out.push_back(id);
  return out;
}

CorpusStats summary_stats(const TaggedCorpus& c,
                          const std::set<PosTag>& arg_tags,
                          const std::set<PosTag>& pred_tags) {
  std::set<std::string> args, preds;
  for (const auto& [id, verse] : c.verses) {
    for (const auto& e : verse.entries) {
      if (arg_tags.count(e.tag)) args.insert(e.token);
      if (pred_tags.count(e.tag)) preds.insert(e.token);
    }
  }
  return {c.verses.size(), args.size(), preds.size()};
}

}  // namespace typoline
