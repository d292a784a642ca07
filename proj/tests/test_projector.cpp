#include <doctest.h>

#include "typoline/projector.hpp"

using namespace typoline;

namespace {

// Model with hand-set lexical entries; q left empty (uniform fallback).
AlignmentModel toy_model(
    std::initializer_list<std::tuple<const char*, const char*, double>> entries) {
  AlignmentModel model;
  for (const auto& [f, e, p] : entries) model.t[e][f] = p;
  return model;
}

}  // namespace

TEST_CASE("single subword, single link") {
  AlignmentModel model = toy_model({{"\xE2\x96\x81"
                                     "plora",
                                     "wept", 0.9}});
  TaggedVerse pivot{VerseId{"40001001"},
                    {{"Jesus", PosTag::PROPN}, {"wept", PosTag::VERB}}};
  RawVerse source{VerseId{"40001001"}, {"plora"}};
  std::vector<SubwordToken> subwords{{"\xE2\x96\x81"
                                      "plora",
                                      0}};
  TaggedVerse out = project_verse(model, subwords, source, pivot);
  REQUIRE(out.entries.size() == 1);
  CHECK(out.entries[0] == TaggedToken{"plora", PosTag::VERB});
}

TEST_CASE("majority aggregation over subword tags") {
  // Three subwords of one word: two link to a NOUN, one to NULL (-> X).
  AlignmentModel model = toy_model({{"aa", "dog", 0.9}, {"bb", "dog", 0.9}});
  TaggedVerse pivot{VerseId{"40001001"}, {{"dog", PosTag::NOUN}}};
  RawVerse source{VerseId{"40001001"}, {"aabbcc"}};
  std::vector<SubwordToken> subwords{{"aa", 0}, {"bb", 0}, {"cc", 0}};
  TaggedVerse out = project_verse(model, subwords, source, pivot);
  CHECK(out.entries[0].tag == PosTag::NOUN);
}

TEST_CASE("tag tie falls to the first subword's tag") {
  AlignmentModel model =
      toy_model({{"aa", "dog", 0.9}, {"bb", "runs", 0.9}});
  TaggedVerse pivot{VerseId{"40001001"},
                    {{"dog", PosTag::NOUN}, {"runs", PosTag::VERB}}};
  RawVerse source{VerseId{"40001001"}, {"aabb"}};
  std::vector<SubwordToken> subwords{{"aa", 0}, {"bb", 0}};
  TaggedVerse out = project_verse(model, subwords, source, pivot);
  CHECK(out.entries[0].tag == PosTag::NOUN);

  std::vector<SubwordToken> reversed{{"bb", 0}, {"aa", 0}};
  CHECK(project_verse(model, reversed, source, pivot).entries[0].tag ==
        PosTag::VERB);
}

TEST_CASE("NULL-linked subwords get the unaligned tag") {
  AlignmentModel model;  // everything floors to NULL
  TaggedVerse pivot{VerseId{"40001001"}, {{"dog", PosTag::NOUN}}};
  RawVerse source{VerseId{"40001001"}, {"zz"}};
  std::vector<SubwordToken> subwords{{"zz", 0}};
  CHECK(project_verse(model, subwords, source, pivot).entries[0].tag ==
        PosTag::X);
  ProjectionConfig cfg;
  cfg.unaligned_tag = PosTag::PART;
  CHECK(project_verse(model, subwords, source, pivot, cfg).entries[0].tag ==
        PosTag::PART);
}

TEST_CASE("punctuation-only tokens bypass alignment") {
  AlignmentModel model = toy_model({{".", "dog", 0.99}});
  TaggedVerse pivot{VerseId{"40001001"}, {{"dog", PosTag::NOUN}}};
  RawVerse source{VerseId{"40001001"}, {"."}};
  std::vector<SubwordToken> subwords{{".", 0}};
  CHECK(project_verse(model, subwords, source, pivot).entries[0].tag ==
        PosTag::PUNCT);
}

TEST_CASE("projection never alters the token sequence") {
  AlignmentModel model;
  TaggedVerse pivot{VerseId{"40001001"}, {{"x", PosTag::NOUN}}};
  RawVerse source{VerseId{"40001001"}, {"alpha", "Beta", "g.3"}};
  std::vector<SubwordToken> subwords{{"al", 0}, {"pha", 0}, {"Beta", 1},
                                     {"g.3", 2}};
  TaggedVerse out = project_verse(model, subwords, source, pivot);
  CHECK(out.tokens() == source.tokens);
}

TEST_CASE("empty verse is an error") {
  AlignmentModel model;
  TaggedVerse pivot{VerseId{"40001001"}, {{"x", PosTag::NOUN}}};
  RawVerse empty{VerseId{"40001001"}, {}};
  try {
    project_verse(model, {}, empty, pivot);
    FAIL("expected EmptyVerse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyVerse);
  }
}

TEST_CASE("project_corpus skips missing verses and reports them") {
  AlignmentModel model = toy_model({{"\xE2\x96\x81"
                                     "a",
                                     "x", 0.9}});
  RawCorpus source = parse_verse_file(
      "40001001\ta\n40001002\ta\n40001003\ta\n");
  TaggedCorpus pivot = parse_tagged_file(
      "40001001\tx/NOUN\n40001002\tx/NOUN\n40001004\tx/NOUN\n");
  BpeModel bpe = train_bpe(source, 10);
  std::vector<VerseId> ids{VerseId{"40001001"}, VerseId{"40001002"},
                           VerseId{"40001003"}, VerseId{"40001004"},
                           VerseId{"40001005"}};
  ProjectionReport report;
  TaggedCorpus out = project_corpus(model, source, bpe, pivot, ids, {}, &report);
  CHECK(out.verses.size() == 2);
  CHECK(report.projected == 2);
  CHECK(report.skipped == 3);
  CHECK(out.verses.size() <= ids.size());
}

TEST_CASE("project_corpus with empty id list") {
  AlignmentModel model;
  RawCorpus source = parse_verse_file("40001001\ta\n");
  TaggedCorpus pivot = parse_tagged_file("40001001\tx/NOUN\n");
  BpeModel bpe = train_bpe(source, 10);
  CHECK(project_corpus(model, source, bpe, pivot, {}).verses.empty());
}
