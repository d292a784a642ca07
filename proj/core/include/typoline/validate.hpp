#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "typoline/corpus.hpp"
#include "typoline/typology.hpp"

namespace typoline {

struct TagAgreement {
  size_t matched = 0;
  size_t reference_total = 0;

  std::optional<double> rate() const {
    if (reference_total == 0) return std::nullopt;
    return static_cast<double>(matched) / static_cast<double>(reference_total);
  }
};

struct AgreementReport {
  std::map<PosTag, TagAgreement> per_tag;
  size_t compared_verses = 0;
  size_t skipped_verses = 0;  // tokenization mismatches
};

struct OverlapReport {
  std::map<PosTag, std::set<std::string>> per_tag;
};

struct AnovaResult {
  double f_stat = 0;
  int df_between = 0;
  int df_within = 0;
  double p_value = 1;
  bool zero_within_variance = false;
  std::map<WordOrderLabel, double> group_means;
  std::map<std::pair<WordOrderLabel, WordOrderLabel>, double> pairwise_mean_diffs;
};

// Recall of the reference tagger's tags over verses whose token sequences
// match position-by-position; mismatched verses are skipped whole.
AgreementReport tag_agreement(const TaggedCorpus& reference,
                              const TaggedCorpus& hypothesis,
                              const std::set<PosTag>& tags_of_interest);

// (form, tag) intersection after NFC + case folding.
OverlapReport gold_overlap(const TaggedCorpus& gold,
                           const TaggedCorpus& hypothesis,
                           const std::set<PosTag>& tags_of_interest);

AnovaResult anova_oneway(const std::map<WordOrderLabel, std::vector<double>>& groups);

// P(F > f) for the F(d1, d2) distribution, via the regularized incomplete
// beta function.
double f_survival(double f, int d1, int d2);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace typoline
