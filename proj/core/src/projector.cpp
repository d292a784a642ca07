#include "typoline/projector.hpp"

#include <array>

#include "typoline/unicode.hpp"

namespace typoline {

namespace {

// Majority tag over one word's subword tags; ties fall to the tag of the
// first subword carrying a maximal count.
PosTag aggregate(const std::vector<PosTag>& tags) {
  std::array<int, kPosTagCount> counts{};
  for (PosTag t : tags) ++counts[static_cast<int>(t)];
  int best = 0;
  for (int c : counts) best = std::max(best, c);
  for (PosTag t : tags)
    if (counts[static_cast<int>(t)] == best) return t;
  return PosTag::X;  // unreachable for non-empty input
}

}  // namespace

TaggedVerse project_verse(const AlignmentModel& model,
                          const std::vector<SubwordToken>& source_subwords,
                          const RawVerse& source, const TaggedVerse& pivot,
                          const ProjectionConfig& cfg) {
  if (source.tokens.empty() || pivot.entries.empty())
    throw Error(ErrorKind::EmptyVerse, "cannot project empty verse " +
                                           source.id.str());

  std::vector<std::string> pivot_words;
  pivot_words.reserve(pivot.entries.size());
  for (const auto& e : pivot.entries) pivot_words.push_back(e.token);
  SentencePair pair = SentencePair::make(
      [&] {
        std::vector<std::string> pieces;
        pieces.reserve(source_subwords.size());
        for (const auto& s : source_subwords) pieces.push_back(s.piece);
        return pieces;
      }(),
      std::move(pivot_words));
  Alignment alignment = viterbi_align(model, pair);

  std::vector<std::vector<PosTag>> word_tags(source.tokens.size());
  for (size_t j = 0; j < source_subwords.size(); ++j) {
    int link = alignment.links[j];
    PosTag tag = link == 0 ? cfg.unaligned_tag : pivot.entries[link - 1].tag;
    word_tags.at(source_subwords[j].word_index).push_back(tag);
  }

  TaggedVerse out{source.id, {}};
  out.entries.reserve(source.tokens.size());
  for (size_t w = 0; w < source.tokens.size(); ++w) {
    const std::string& token = source.tokens[w];
    PosTag tag;
    if (unicode::is_punctuation_only(token))
      tag = PosTag::PUNCT;
    else if (word_tags[w].empty())
      tag = cfg.unaligned_tag;
    else
      tag = aggregate(word_tags[w]);
    out.entries.push_back({token, tag});
  }
  return out;
}

TaggedCorpus project_corpus(const AlignmentModel& model, const RawCorpus& source,
                            const BpeModel& bpe, const TaggedCorpus& pivot,
                            const std::vector<VerseId>& ids,
                            const ProjectionConfig& cfg,
                            ProjectionReport* report) {
  TaggedCorpus out;
  out.language = source.language;
  for (const auto& id : ids) {
    auto sit = source.verses.find(id);
    auto pit = pivot.verses.find(id);
    if (sit == source.verses.end() || pit == pivot.verses.end()) {
      if (report) {
        ++report->skipped;
        report->skipped_ids.push_back(id);
      }
      continue;
    }
    auto subwords = bpe.encode(sit->second);
    out.verses.emplace(
        id, project_verse(model, subwords, sit->second, pit->second, cfg));
    if (report) ++report->projected;
  }
  return out;
}

}  // namespace typoline
