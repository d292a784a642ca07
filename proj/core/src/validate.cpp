#include "typoline/validate.hpp"

#include <cmath>
#include <limits>

#include "typoline/unicode.hpp"

namespace typoline {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double f_survival(double f, int d1, int d2) {
  if (f <= 0.0) return 1.0;
  double x = d2 / (d2 + d1 * f);
  return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, x);
}

AgreementReport tag_agreement(const TaggedCorpus& reference,
                              const TaggedCorpus& hypothesis,
                              const std::set<PosTag>& tags_of_interest) {
  AgreementReport report;
  for (const auto& [id, ref_verse] : reference.verses) {
    auto hit = hypothesis.verses.find(id);
    if (hit == hypothesis.verses.end()) continue;
    const auto& hyp_verse = hit->second;
    bool same_tokens = ref_verse.entries.size() == hyp_verse.entries.size();
    for (size_t i = 0; same_tokens && i < ref_verse.entries.size(); ++i)
      same_tokens = ref_verse.entries[i].token == hyp_verse.entries[i].token;
    if (!same_tokens) {
      ++report.skipped_verses;
      continue;
    }
    ++report.compared_verses;
    for (size_t i = 0; i < ref_verse.entries.size(); ++i) {
      PosTag ref_tag = ref_verse.entries[i].tag;
      if (!tags_of_interest.count(ref_tag)) continue;
      auto& agreement = report.per_tag[ref_tag];
      ++agreement.reference_total;
      if (hyp_verse.entries[i].tag == ref_tag) ++agreement.matched;
    }
  }
  if (report.compared_verses == 0)
    throw Error(ErrorKind::NoComparableVerses,
                "no shared verses with identical tokenization");
  return report;
}

OverlapReport gold_overlap(const TaggedCorpus& gold,
                           const TaggedCorpus& hypothesis,
                           const std::set<PosTag>& tags_of_interest) {
  auto lexicon = [&](const TaggedCorpus& c) {
    std::map<PosTag, std::set<std::string>> lex;
    for (const auto& [id, verse] : c.verses)
      for (const auto& e : verse.entries)
        if (tags_of_interest.count(e.tag))
          lex[e.tag].insert(unicode::fold_case(e.token));
    return lex;
  };
  auto gold_lex = lexicon(gold);
  auto hyp_lex = lexicon(hypothesis);

  OverlapReport report;
  for (PosTag tag : tags_of_interest) {
    auto& shared = report.per_tag[tag];
    const auto& g = gold_lex[tag];
    const auto& h = hyp_lex[tag];
    for (const auto& form : g)
      if (h.count(form)) shared.insert(form);
  }
  return report;
}

AnovaResult anova_oneway(
    const std::map<WordOrderLabel, std::vector<double>>& groups) {
  if (groups.size() < 2)
    throw Error(ErrorKind::TooFewGroups, "one-way ANOVA needs >= 2 groups");
  size_t n_total = 0;
  double grand_sum = 0;
  for (const auto& [label, values] : groups) {
    if (values.empty())
      throw Error(ErrorKind::TooFewGroups,
                  "empty group " + std::string(to_string(label)));
    n_total += values.size();
    for (double v : values) grand_sum += v;
  }
  int k = static_cast<int>(groups.size());
  if (static_cast<int>(n_total) - k < 1)
    throw Error(ErrorKind::TooFewGroups, "within-group degrees of freedom < 1");
  double grand_mean = grand_sum / static_cast<double>(n_total);

  AnovaResult result;
  result.df_between = k - 1;
  result.df_within = static_cast<int>(n_total) - k;

  double ssb = 0, ssw = 0;
  for (const auto& [label, values] : groups) {
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    result.group_means[label] = mean;
    double d = mean - grand_mean;
    ssb += static_cast<double>(values.size()) * d * d;
    for (double v : values) {
      double e = v - mean;
      ssw += e * e;
    }
  }
  for (auto a = result.group_means.begin(); a != result.group_means.end(); ++a)
    for (auto b = std::next(a); b != result.group_means.end(); ++b)
      result.pairwise_mean_diffs[{a->first, b->first}] =
          std::fabs(a->second - b->second);

  if (ssw == 0.0) {
    if (ssb == 0.0) {
      result.f_stat = 0.0;
      result.p_value = 1.0;
    } else {
      result.f_stat = std::numeric_limits<double>::infinity();
      result.p_value = 0.0;
      result.zero_within_variance = true;
    }
    return result;
  }

  result.f_stat = (ssb / result.df_between) / (ssw / result.df_within);
  result.p_value = f_survival(result.f_stat, result.df_between, result.df_within);
  return result;
}

}  // namespace typoline
