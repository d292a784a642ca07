#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "typoline/corpus.hpp"

namespace typoline {

// Lemma sets for one verse of a lemmatized translation.
struct LemmaVerse {
  VerseId id;
  std::set<std::string> lemmas;
};

using LemmaMap = std::map<VerseId, LemmaVerse>;

struct FilterReport {
  size_t input_count = 0;
  size_t after_lemma_overlap = 0;
  size_t after_verb_support = 0;
  std::vector<VerseId> selected;
};

// Maps a surface form to its lemma; identity is a valid choice.
using LemmaLookup = std::function<std::string(const std::string&)>;

inline LemmaLookup identity_lemmas() {
  return [](const std::string& form) { return form; };
}

// "ID<TAB>lemma lemma ..." per line; lemmas case-folded.
LemmaMap parse_lemma_file(std::string_view text);

// IDs present in both maps whose lemma intersection has size >= min_shared.
std::vector<VerseId> lemma_overlap_filter(const LemmaMap& a, const LemmaMap& b,
                                          size_t min_shared);

// Keeps a verse iff it contains a VERB whose lemma occurs in at least
// min_other other verses of `ids` (verse frequency >= min_other + 1).
std::vector<VerseId> verb_support_filter(const TaggedCorpus& pivot,
                                         const std::vector<VerseId>& ids,
                                         const LemmaLookup& lemma_of,
                                         size_t min_other);

FilterReport select_training_verses(const LemmaMap& a, const LemmaMap& b,
                                    const TaggedCorpus& pivot,
                                    const LemmaLookup& lemma_of,
                                    size_t min_shared = 4, size_t min_other = 5);

}  // namespace typoline
