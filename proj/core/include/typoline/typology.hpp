#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "typoline/corpus.hpp"

namespace typoline {

enum class VerseOrder { NounFirst, VerbFirst, Neither };

struct N1Profile {
  std::string language;
  size_t noun_first = 0;
  size_t verb_first = 0;
  size_t considered = 0;  // == noun_first + verb_first

  // Undefined when verb_first == 0.
  std::optional<double> raw_ratio() const {
    if (verb_first == 0) return std::nullopt;
    return static_cast<double>(noun_first) / static_cast<double>(verb_first);
  }
  double smoothed_ratio() const {
    return static_cast<double>(noun_first + 1) /
           static_cast<double>(verb_first + 1);
  }
};

enum class WordOrderLabel { FREE, SV, VS, UNK };

std::optional<WordOrderLabel> parse_word_order(std::string_view s);
std::string_view to_string(WordOrderLabel label);

// Classifier feature derived from a profile.
enum class N1Feature { Raw, Smoothed, LogSmoothed };

std::optional<N1Feature> parse_feature(std::string_view s);
std::string_view to_string(N1Feature f);

// Raw feature is undefined for verb_first == 0 profiles.
std::optional<double> feature_value(const N1Profile& p, N1Feature f);

struct GnbClass {
  WordOrderLabel label = WordOrderLabel::UNK;
  double prior = 0;
  double mean = 0;
  double variance = 0;
};

// One-dimensional Gaussian Naive Bayes over the N1 feature.
struct GnbModel {
  std::vector<GnbClass> classes;  // sorted by label name
  double epsilon = 0;             // variance floor added per class

  // "GNB v1 epsilon=<val>" header, then "label<TAB>prior<TAB>mean<TAB>variance".
  std::string serialize() const;
  static GnbModel deserialize(std::string_view text);
};

struct GnbPrediction {
  WordOrderLabel label = WordOrderLabel::UNK;
  std::map<WordOrderLabel, double> posteriors;
};

VerseOrder verse_order(const TaggedVerse& v, const std::set<PosTag>& arg_tags,
                       const std::set<PosTag>& pred_tags);

N1Profile n1_profile(const TaggedCorpus& c, const std::set<PosTag>& arg_tags,
                     const std::set<PosTag>& pred_tags);

inline std::set<PosTag> default_n1_arg_tags() { return {PosTag::NOUN}; }
inline std::set<PosTag> default_n1_pred_tags() { return {PosTag::VERB}; }

// Maximum-likelihood per-class Gaussians; epsilon = 1e-9 times the pooled
// variance, floored at 1e-12. Labels must exclude UNK.
GnbModel gnb_train(const std::vector<std::pair<double, WordOrderLabel>>& samples);

// Argmax of class log-posteriors; ties break to the lexicographically
// earliest label name.
GnbPrediction gnb_predict(const GnbModel& m, double value);

// TSV row "iso\tnoun_first\tverb_first\tconsidered\traw\tsmoothed"
// ("NA" when raw is undefined).
std::string profile_tsv_row(const N1Profile& p);
N1Profile parse_profile_tsv_row(std::string_view line);

}  // namespace typoline
