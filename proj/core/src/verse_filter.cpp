#include "typoline/verse_filter.hpp"

#include <algorithm>

#include "typoline/unicode.hpp"

namespace typoline {

LemmaMap parse_lemma_file(std::string_view text) {
  // Reuse the raw verse parser, then fold case per lemma.
  RawCorpus raw = parse_verse_file(text);
  LemmaMap out;
  for (const auto& [id, verse] : raw.verses) {
    LemmaVerse lv{id, {}};
    for (const auto& tok : verse.tokens) lv.lemmas.insert(unicode::fold_case(tok));
    out.emplace(id, std::move(lv));
  }
  return out;
}

std::vector<VerseId> lemma_overlap_filter(const LemmaMap& a, const LemmaMap& b,
                                          size_t min_shared) {
  std::vector<VerseId> out;
  for (const auto& [id, va] : a) {
    auto it = b.find(id);
    if (it == b.end()) continue;
    const auto& la = va.lemmas;
    const auto& lb = it->second.lemmas;
    size_t shared = 0;
    for (const auto& lemma : la)
      if (lb.count(lemma) && ++shared >= min_shared) break;
    if (shared >= min_shared) out.push_back(id);
  }
  return out;
}

std::vector<VerseId> verb_support_filter(const TaggedCorpus& pivot,
                                         const std::vector<VerseId>& ids,
                                         const LemmaLookup& lemma_of,
                                         size_t min_other) {
  // Verb lemma -> number of distinct verses (within `ids`) containing it.
  std::map<std::string, size_t> verse_freq;
  std::map<VerseId, std::set<std::string>> verbs_of;
  for (const auto& id : ids) {
    auto it = pivot.verses.find(id);
    if (it == pivot.verses.end())
      throw Error(ErrorKind::MissingVerse, "verse " + id.str() + " not in pivot");
    std::set<std::string>& verbs = verbs_of[id];
    for (const auto& e : it->second.entries)
      if (e.tag == PosTag::VERB)
        verbs.insert(unicode::fold_case(lemma_of(e.token)));
    for (const auto& v : verbs) ++verse_freq[v];
  }
  std::vector<VerseId> out;
  for (const auto& id : ids) {
    const auto& verbs = verbs_of[id];
    bool supported = std::any_of(verbs.begin(), verbs.end(), [&](const auto& v) {
      return verse_freq[v] >= min_other + 1;
    });
    if (supported) out.push_back(id);
  }
  return out;
}

FilterReport select_training_verses(const LemmaMap& a, const LemmaMap& b,
                                    const TaggedCorpus& pivot,
                                    const LemmaLookup& lemma_of,
                                    size_t min_shared, size_t min_other) {
  FilterReport report;
  for (const auto& [id, _] : a)
    if (b.count(id)) ++report.input_count;
  auto stage1 = lemma_overlap_filter(a, b, min_shared);
  report.after_lemma_overlap = stage1.size();
  report.selected = verb_support_filter(pivot, stage1, lemma_of, min_other);
  report.after_verb_support = report.selected.size();
  return report;
}

}  // namespace typoline
