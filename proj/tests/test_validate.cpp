#include <doctest.h>

#include <cmath>

#include "typoline/validate.hpp"

using namespace typoline;

namespace {

const std::set<PosTag> kNounVerb{PosTag::NOUN, PosTag::VERB};

}  // namespace

TEST_CASE("tag_agreement direct count") {
  TaggedCorpus ref = parse_tagged_file("40001001\ta/NOUN b/VERB c/NOUN\n");
  TaggedCorpus hyp = parse_tagged_file("40001001\ta/NOUN b/VERB c/VERB\n");
  AgreementReport r = tag_agreement(ref, hyp, kNounVerb);
  CHECK(r.compared_verses == 1);
  CHECK(*r.per_tag.at(PosTag::NOUN).rate() == doctest::Approx(0.5));
  CHECK(*r.per_tag.at(PosTag::VERB).rate() == doctest::Approx(1.0));
}

TEST_CASE("tag_agreement skips tokenization mismatches") {
  TaggedCorpus ref = parse_tagged_file(
      "40001001\ta/NOUN b/VERB\n40001002\tx/NOUN\n");
  TaggedCorpus hyp = parse_tagged_file(
      "40001001\ta/NOUN b/VERB\n40001002\ty/NOUN\n");
  AgreementReport r = tag_agreement(ref, hyp, kNounVerb);
  CHECK(r.compared_verses == 1);
  CHECK(r.skipped_verses == 1);
}

TEST_CASE("tag_agreement with no comparable verses") {
  TaggedCorpus ref = parse_tagged_file("40001001\ta/NOUN b/VERB\n");
  TaggedCorpus hyp = parse_tagged_file("40001001\tc/NOUN d/VERB\n");
  try {
    tag_agreement(ref, hyp, kNounVerb);
    FAIL("expected NoComparableVerses");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoComparableVerses);
  }
}

TEST_CASE("agreement is 1.0 when hypothesis equals reference") {
  TaggedCorpus ref = parse_tagged_file(
      "40001001\ta/NOUN b/VERB c/ADJ\n40001002\td/VERB e/NOUN\n");
  AgreementReport r = tag_agreement(ref, ref, kNounVerb);
  for (const auto& [tag, agreement] : r.per_tag)
    CHECK(*agreement.rate() == doctest::Approx(1.0));
}

TEST_CASE("gold_overlap intersects form+tag pairs") {
  TaggedCorpus gold = parse_tagged_file("40001001\tkin/VERB shak/NOUN\n");
  TaggedCorpus hyp =
      parse_tagged_file("40002001\tkin/VERB kin/NOUN din/NOUN\n");
  OverlapReport r = gold_overlap(gold, hyp, kNounVerb);
  CHECK(r.per_tag.at(PosTag::VERB) == std::set<std::string>{"kin"});
  CHECK(r.per_tag.at(PosTag::NOUN).empty());
}

TEST_CASE("gold_overlap case-folds both sides") {
  TaggedCorpus gold = parse_tagged_file("40001001\tKin/VERB\n");
  TaggedCorpus hyp = parse_tagged_file("40002001\tkin/VERB\n");
  OverlapReport r = gold_overlap(gold, hyp, {PosTag::VERB});
  CHECK(r.per_tag.at(PosTag::VERB) == std::set<std::string>{"kin"});
}

TEST_CASE("gold_overlap disjoint orthographies") {
  TaggedCorpus gold = parse_tagged_file("40001001\taaa/VERB\n");
  TaggedCorpus hyp = parse_tagged_file("40002001\tbbb/VERB\n");
  OverlapReport r = gold_overlap(gold, hyp, {PosTag::VERB});
  CHECK(r.per_tag.at(PosTag::VERB).empty());
}

TEST_CASE("anova oracle: F = 3, p = 0.125") {
  std::map<WordOrderLabel, std::vector<double>> groups{
      {WordOrderLabel::FREE, {1, 2, 3}},
      {WordOrderLabel::SV, {2, 3, 4}},
      {WordOrderLabel::VS, {3, 4, 5}}};
  AnovaResult r = anova_oneway(groups);
  CHECK(r.f_stat == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.df_between == 2);
  CHECK(r.df_within == 6);
  // Closed form for df1 = 2: P(F > f) = (1 + f*d1/d2)^(-d2/2).
  CHECK(r.p_value == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(r.pairwise_mean_diffs.at({WordOrderLabel::FREE, WordOrderLabel::VS}) ==
        doctest::Approx(2.0));
}

TEST_CASE("anova identical groups: F = 0, p = 1") {
  std::map<WordOrderLabel, std::vector<double>> groups{
      {WordOrderLabel::SV, {1, 2, 3}}, {WordOrderLabel::VS, {1, 2, 3}}};
  AnovaResult r = anova_oneway(groups);
  CHECK(r.f_stat == 0.0);
  CHECK(r.p_value == 1.0);
}

TEST_CASE("anova error paths") {
  try {
    anova_oneway({{WordOrderLabel::SV, {1, 2}}});
    FAIL("expected TooFewGroups");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFewGroups);
  }
  CHECK_THROWS_AS(anova_oneway({{WordOrderLabel::SV, {1}},
                                {WordOrderLabel::VS, {}}}),
                  Error);
}

TEST_CASE("anova zero within variance, nonzero between") {
  std::map<WordOrderLabel, std::vector<double>> groups{
      {WordOrderLabel::SV, {1, 1}}, {WordOrderLabel::VS, {2, 2}}};
  AnovaResult r = anova_oneway(groups);
  CHECK(r.zero_within_variance);
  CHECK(r.p_value == 0.0);
}

TEST_CASE("anova invariance under group relabeling") {
  std::map<WordOrderLabel, std::vector<double>> groups{
      {WordOrderLabel::SV, {1.0, 2.5, 2.0}},
      {WordOrderLabel::VS, {4.0, 5.5, 3.5}}};
  std::map<WordOrderLabel, std::vector<double>> relabeled{
      {WordOrderLabel::VS, {1.0, 2.5, 2.0}},
      {WordOrderLabel::SV, {4.0, 5.5, 3.5}}};
  AnovaResult a = anova_oneway(groups);
  AnovaResult b = anova_oneway(relabeled);
  CHECK(a.f_stat == doctest::Approx(b.f_stat).epsilon(1e-12));
  CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-12));
}

TEST_CASE("anova location invariance") {
  std::map<WordOrderLabel, std::vector<double>> groups{
      {WordOrderLabel::SV, {1.0, 2.0, 2.2}},
      {WordOrderLabel::VS, {3.0, 3.5, 4.1}}};
  AnovaResult base = anova_oneway(groups);
  for (auto& [label, values] : groups)
    for (double& v : values) v += 17.25;
  AnovaResult shifted = anova_oneway(groups);
  CHECK(base.f_stat == doctest::Approx(shifted.f_stat).epsilon(1e-9));
  CHECK(base.p_value == doctest::Approx(shifted.p_value).epsilon(1e-9));
}

TEST_CASE("f_survival closed form for d1 = 2") {
  for (double f : {0.1, 1.0, 3.0, 10.0}) {
    for (int d2 : {2, 6, 30}) {
      double expected = std::pow(1.0 + f * 2.0 / d2, -d2 / 2.0);
      CHECK(f_survival(f, 2, d2) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("f_survival boundary and monotonicity") {
  CHECK(f_survival(0.0, 3, 7) == 1.0);
  double prev = 1.0;
  for (double f : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 1e4}) {
    double s = f_survival(f, 3, 7);
    CHECK(s <= prev + 1e-15);
    CHECK(s >= 0.0);
    prev = s;
  }
  CHECK(f_survival(1e8, 3, 7) < 1e-8);
}

TEST_CASE("regularized incomplete beta identities") {
  // I_x(1,1) = x.
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0})
    CHECK(regularized_incomplete_beta(1, 1, x) ==
          doctest::Approx(x).epsilon(1e-12));
  // Symmetry: I_x(a,b) = 1 - I_{1-x}(b,a).
  CHECK(regularized_incomplete_beta(2.5, 4.0, 0.3) ==
        doctest::Approx(1.0 - regularized_incomplete_beta(4.0, 2.5, 0.7))
            .epsilon(1e-10));
}
