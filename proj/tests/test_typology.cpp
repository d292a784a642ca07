#include <doctest.h>

#include <cmath>
#include <random>

#include "typoline/typology.hpp"

using namespace typoline;

namespace {

TaggedVerse verse_with_tags(std::initializer_list<PosTag> tags) {
  TaggedVerse v{VerseId{"40001001"}, {}};
  int i = 0;
  for (PosTag t : tags) v.entries.push_back({"w" + std::to_string(i++), t});
  return v;
}

const std::set<PosTag> kArgs = default_n1_arg_tags();
const std::set<PosTag> kPreds = default_n1_pred_tags();

}  // namespace

TEST_CASE("verse_order direct scans") {
  CHECK(verse_order(verse_with_tags({PosTag::NOUN, PosTag::VERB}), kArgs,
                    kPreds) == VerseOrder::NounFirst);
  CHECK(verse_order(verse_with_tags({PosTag::VERB, PosTag::NOUN}), kArgs,
                    kPreds) == VerseOrder::VerbFirst);
  CHECK(verse_order(verse_with_tags({PosTag::NOUN, PosTag::NOUN}), kArgs,
                    kPreds) == VerseOrder::Neither);
  CHECK(verse_order(verse_with_tags({PosTag::VERB}), kArgs, kPreds) ==
        VerseOrder::Neither);
  // Tags outside arg/pred sets are invisible to the scan.
  CHECK(verse_order(verse_with_tags({PosTag::DET, PosTag::ADJ, PosTag::VERB,
                                     PosTag::NOUN}),
                    kArgs, kPreds) == VerseOrder::VerbFirst);
}

TEST_CASE("verse_order respects configured tag sets") {
  auto v = verse_with_tags({PosTag::PROPN, PosTag::VERB});
  CHECK(verse_order(v, kArgs, kPreds) == VerseOrder::Neither);
  CHECK(verse_order(v, {PosTag::NOUN, PosTag::PROPN}, kPreds) ==
        VerseOrder::NounFirst);
}

TEST_CASE("n1_profile manual count") {
  TaggedCorpus c = parse_tagged_file(
      "40001001\tdog/NOUN runs/VERB\n"
      "40001002\truns/VERB dog/NOUN\n"
      "40001003\tbig/ADJ dog/NOUN runs/VERB\n");
  N1Profile p = n1_profile(c, kArgs, kPreds);
  CHECK(p.noun_first == 2);
  CHECK(p.verb_first == 1);
  CHECK(p.considered == 3);
  CHECK(*p.raw_ratio() == doctest::Approx(2.0));
  CHECK(p.smoothed_ratio() == doctest::Approx(1.5));
}

TEST_CASE("n1_profile all-Neither corpus") {
  TaggedCorpus c = parse_tagged_file("40001001\tdog/NOUN cat/NOUN\n");
  N1Profile p = n1_profile(c, kArgs, kPreds);
  CHECK(p.noun_first == 0);
  CHECK(p.verb_first == 0);
  CHECK_FALSE(p.raw_ratio().has_value());
  CHECK(p.smoothed_ratio() == doctest::Approx(1.0));
}

TEST_CASE("n1_profile synthetic VSO corpus") {
  std::string text;
  for (int i = 0; i < 100; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "40%03d%03d", i / 100 + 1, i % 100 + 1);
    text += std::string(id) + "\truns/VERB dog/NOUN\n";
  }
  N1Profile p = n1_profile(parse_tagged_file(text), kArgs, kPreds);
  CHECK(p.verb_first == 100);
  CHECK(*p.raw_ratio() == 0.0);
  CHECK(p.smoothed_ratio() == doctest::Approx(1.0 / 101.0));
}

TEST_CASE("counts partition the corpus") {
  TaggedCorpus c = parse_tagged_file(
      "40001001\tdog/NOUN runs/VERB\n"
      "40001002\tdog/NOUN\n"
      "40001003\truns/VERB dog/NOUN\n"
      "40001004\tso/ADV\n");
  N1Profile p = n1_profile(c, kArgs, kPreds);
  size_t neither = c.verses.size() - p.noun_first - p.verb_first;
  CHECK(p.noun_first + p.verb_first + neither == c.verses.size());
  CHECK(neither == 2);
}

TEST_CASE("gnb_train hand arithmetic") {
  std::vector<std::pair<double, WordOrderLabel>> samples{
      {1.0, WordOrderLabel::SV}, {1.2, WordOrderLabel::SV},
      {0.8, WordOrderLabel::SV}, {3.0, WordOrderLabel::VS},
      {3.2, WordOrderLabel::VS}, {2.8, WordOrderLabel::VS}};
  GnbModel m = gnb_train(samples);
  REQUIRE(m.classes.size() == 2);
  CHECK(m.classes[0].label == WordOrderLabel::SV);
  CHECK(m.classes[0].prior == doctest::Approx(0.5));
  CHECK(m.classes[0].mean == doctest::Approx(1.0));
  CHECK(m.classes[1].label == WordOrderLabel::VS);
  CHECK(m.classes[1].prior == doctest::Approx(0.5));
  CHECK(m.classes[1].mean == doctest::Approx(3.0));
  // ML variance of {1.0, 1.2, 0.8} is 0.02666..., plus epsilon.
  CHECK(m.classes[0].variance ==
        doctest::Approx(0.08 / 3.0 + m.epsilon).epsilon(1e-12));
}

TEST_CASE("gnb_train single class is an error") {
  std::vector<std::pair<double, WordOrderLabel>> samples{
      {1.0, WordOrderLabel::SV}, {1.5, WordOrderLabel::SV}};
  try {
    gnb_train(samples);
    FAIL("expected SingleClass");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingleClass);
  }
  try {
    gnb_train({});
    FAIL("expected EmptyTraining");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyTraining);
  }
}

TEST_CASE("degenerate class variance falls to the epsilon floor") {
  std::vector<std::pair<double, WordOrderLabel>> samples{
      {2.0, WordOrderLabel::SV}, {2.0, WordOrderLabel::SV},
      {5.0, WordOrderLabel::VS}};
  GnbModel m = gnb_train(samples);
  CHECK(m.classes[0].variance == doctest::Approx(m.epsilon));
  CHECK(m.epsilon > 0);
  // Prediction near the degenerate mean still works.
  CHECK(gnb_predict(m, 2.0).label == WordOrderLabel::SV);
}

TEST_CASE("gnb_predict on the trained toy model") {
  std::vector<std::pair<double, WordOrderLabel>> samples{
      {1.0, WordOrderLabel::SV}, {1.2, WordOrderLabel::SV},
      {0.8, WordOrderLabel::SV}, {3.0, WordOrderLabel::VS},
      {3.2, WordOrderLabel::VS}, {2.8, WordOrderLabel::VS}};
  GnbModel m = gnb_train(samples);
  GnbPrediction pred = gnb_predict(m, 1.1);
  CHECK(pred.label == WordOrderLabel::SV);
  double sum = 0;
  for (const auto& [label, p] : pred.posteriors) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("equidistant tie breaks lexicographically") {
  GnbModel m;
  m.epsilon = 1e-12;
  m.classes.push_back({WordOrderLabel::SV, 0.5, 1.0, 0.25});
  m.classes.push_back({WordOrderLabel::VS, 0.5, 3.0, 0.25});
  CHECK(gnb_predict(m, 2.0).label == WordOrderLabel::SV);
}

TEST_CASE("argmax invariant under prior rescaling") {
  GnbModel m;
  m.epsilon = 1e-12;
  m.classes.push_back({WordOrderLabel::SV, 0.3, 1.0, 0.5});
  m.classes.push_back({WordOrderLabel::VS, 0.7, 2.5, 0.5});
  GnbModel scaled = m;
  for (auto& c : scaled.classes) c.prior *= 10.0;  // common constant in log space
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> value(-2.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    double v = value(rng);
    CHECK(gnb_predict(m, v).label == gnb_predict(scaled, v).label);
  }
}

TEST_CASE("linearly separable data gives 100% training accuracy") {
  std::vector<std::pair<double, WordOrderLabel>> samples;
  for (int i = 0; i < 10; ++i) {
    samples.emplace_back(1.0 + 0.01 * i, WordOrderLabel::SV);
    samples.emplace_back(4.0 + 0.01 * i, WordOrderLabel::VS);
  }
  GnbModel m = gnb_train(samples);
  for (const auto& [v, label] : samples)
    CHECK(gnb_predict(m, v).label == label);
}

TEST_CASE("FREE is a valid training class") {
  std::vector<std::pair<double, WordOrderLabel>> samples{
      {1.0, WordOrderLabel::FREE}, {2.0, WordOrderLabel::SV},
      {3.0, WordOrderLabel::VS}};
  GnbModel m = gnb_train(samples);
  CHECK(m.classes.size() == 3);
  CHECK(m.classes[0].label == WordOrderLabel::FREE);  // name order
  CHECK_THROWS_AS(gnb_train({{1.0, WordOrderLabel::UNK},
                             {2.0, WordOrderLabel::SV}}),
                  std::invalid_argument);
}

TEST_CASE("gnb model serialization round-trip") {
  std::vector<std::pair<double, WordOrderLabel>> samples{
      {1.0, WordOrderLabel::SV}, {1.5, WordOrderLabel::SV},
      {3.0, WordOrderLabel::VS}, {3.3, WordOrderLabel::VS}};
  GnbModel m = gnb_train(samples);
  GnbModel loaded = GnbModel::deserialize(m.serialize());
  CHECK(loaded.epsilon == m.epsilon);
  REQUIRE(loaded.classes.size() == m.classes.size());
  for (size_t i = 0; i < m.classes.size(); ++i) {
    CHECK(loaded.classes[i].label == m.classes[i].label);
    CHECK(loaded.classes[i].prior == m.classes[i].prior);
    CHECK(loaded.classes[i].mean == m.classes[i].mean);
    CHECK(loaded.classes[i].variance == m.classes[i].variance);
  }
}

TEST_CASE("profile TSV row format") {
  N1Profile p;
  p.language = "abc";
  p.noun_first = 2;
  p.verb_first = 1;
  p.considered = 3;
  CHECK(profile_tsv_row(p) == "abc\t2\t1\t3\t2\t1.5");
  p.verb_first = 0;
  p.considered = 2;
  CHECK(profile_tsv_row(p) == "abc\t2\t0\t2\tNA\t3");
  N1Profile back = parse_profile_tsv_row("abc\t2\t1\t3\t2\t1.5");
  CHECK(back.language == "abc");
  CHECK(back.noun_first == 2);
  CHECK(back.verb_first == 1);
}
