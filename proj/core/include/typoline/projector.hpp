#pragma once

#include <vector>

#include "typoline/aligner.hpp"
#include "typoline/bpe.hpp"
#include "typoline/corpus.hpp"

namespace typoline {

struct ProjectionConfig {
  PosTag unaligned_tag = PosTag::X;
  // Aggregation over a word's subword tags: majority, ties fall to the
  // first subword's tag.
};

struct ProjectionReport {
  size_t projected = 0;
  size_t skipped = 0;
  std::vector<VerseId> skipped_ids;
};

// Tags each source word with the tag of the pivot word its subwords align
// to. Punctuation-only tokens are tagged PUNCT without consulting the model.
TaggedVerse project_verse(const AlignmentModel& model,
                          const std::vector<SubwordToken>& source_subwords,
                          const RawVerse& source, const TaggedVerse& pivot,
                          const ProjectionConfig& cfg = {});

// Projects every requested ID present in both corpora; missing verses are
// skipped and recorded in the report.
TaggedCorpus project_corpus(const AlignmentModel& model, const RawCorpus& source,
                            const BpeModel& bpe, const TaggedCorpus& pivot,
                            const std::vector<VerseId>& ids,
                            const ProjectionConfig& cfg = {},
                            ProjectionReport* report = nullptr);

}  // namespace typoline
