#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "typoline/errors.hpp"

namespace typoline {

// 8-digit verse identifier (book/chapter/verse), treated as opaque.
class VerseId {
 public:
  static std::optional<VerseId> parse(std::string_view s);

  // Throws Error(InvalidVerseId) on bad input.
  explicit VerseId(std::string_view s);

  const std::string& str() const { return id_; }

  auto operator<=>(const VerseId&) const = default;

 private:
  struct Unchecked {};
  VerseId(Unchecked, std::string_view s) : id_(s) {}
  std::string id_;
};

// The 17-tag Universal Dependencies part-of-speech inventory.
enum class PosTag {
  ADJ, ADV, INTJ, NOUN, PROPN, VERB,            // open classes
  ADP, AUX, CCONJ, DET, NUM, PART, PRON, SCONJ, // closed classes
  PUNCT, SYM, X,                                // other
};

inline constexpr int kPosTagCount = 17;

std::optional<PosTag> parse_pos_tag(std::string_view s);
std::string_view to_string(PosTag t);

struct RawVerse {
  VerseId id;
  std::vector<std::string> tokens;
};

struct TaggedToken {
  std::string token;
  PosTag tag;

  bool operator==(const TaggedToken&) const = default;
};

struct TaggedVerse {
  VerseId id;
  std::vector<TaggedToken> entries;

  std::vector<std::string> tokens() const;
};

struct RawCorpus {
  std::string language;  // ISO 639-3 code, may be empty
  std::map<VerseId, RawVerse> verses;
};

struct TaggedCorpus {
  std::string language;
  std::map<VerseId, TaggedVerse> verses;
};

struct CorpusStats {
  size_t verse_count = 0;
  size_t unique_arguments = 0;
  size_t unique_predicates = 0;

  bool operator==(const CorpusStats&) const = default;
};

// "ID<TAB>tokens..." per line; '#' comments and blank lines skipped.
// All text is NFC-normalized.
RawCorpus parse_verse_file(std::string_view text);

// "ID<TAB>token/TAG ..." per line; the last '/' splits token from tag.
TaggedCorpus parse_tagged_file(std::string_view text);

std::string serialize_verse_file(const RawCorpus& c);
std::string serialize_tagged_file(const TaggedCorpus& c);

// IDs present in every list, in VerseId order. Input must be non-empty.
std::vector<VerseId> intersect_ids(const std::vector<std::vector<VerseId>>& id_lists);

std::vector<VerseId> corpus_ids(const RawCorpus& c);
std::vector<VerseId> corpus_ids(const TaggedCorpus& c);

// Distinct surface forms carrying any argument / predicate tag.
CorpusStats summary_stats(const TaggedCorpus& c,
                          const std::set<PosTag>& arg_tags,
                          const std::set<PosTag>& pred_tags);

inline std::set<PosTag> default_arg_tags() { return {PosTag::NOUN, PosTag::PROPN}; }
inline std::set<PosTag> default_pred_tags() { return {PosTag::VERB}; }

}  // namespace typoline
