#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "typoline/errors.hpp"

namespace typoline {

inline constexpr std::string_view kNullWord = "<NULL>";

// Source subword pieces paired with pivot words; target position 0 is
// always the synthetic NULL word.
struct SentencePair {
  std::vector<std::string> source;
  std::vector<std::string> target;  // target[0] == kNullWord

  static SentencePair make(std::vector<std::string> source_pieces,
                           std::vector<std::string> pivot_words);
};

// Lexical table t(f|e): for each target word, a distribution over source
// symbols, stored sparse over co-occurring pairs.
using TTable = std::map<std::string, std::map<std::string, double>>;

struct DistortionKey {
  int target_len = 0;  // l, excluding NULL
  int source_len = 0;  // m

  auto operator<=>(const DistortionKey&) const = default;
};

// q(i | j, l, m) indexed [j][i], i in 0..l.
using QTable = std::map<DistortionKey, std::vector<std::vector<double>>>;

struct AlignmentModel {
  TTable t;
  QTable q;
  int ibm1_iterations = 0;
  int ibm2_iterations = 0;

  // Floor for unseen (f, e) events at decode time.
  static constexpr double kProbFloor = 1e-12;

  double lexical_prob(const std::string& f, const std::string& e) const;
  double distortion_prob(int i, int j, int l, int m) const;

  // Sections "T" (f e prob) and "Q" (i j l m prob); t entries below 1e-6
  // are pruned on write.
  std::string serialize() const;
  static AlignmentModel deserialize(std::string_view text);
};

// links[j] = aligned target position in 0..l (0 = NULL).
struct Alignment {
  std::vector<int> links;
};

// IBM Model 1 EM from a uniform-over-cooccurrence initialization.
// Per-iteration corpus log-likelihoods are recorded in history.
TTable train_ibm1(const std::vector<SentencePair>& pairs, int iterations,
                  std::vector<double>* likelihood_history = nullptr);

// IBM Model 2 EM on top of a Model 1 t-table; q starts uniform.
AlignmentModel train_ibm2(const std::vector<SentencePair>& pairs, int iterations,
                          TTable init_t);

// argmax_i q(i|j,l,m) * t(f_j|e_i); ties break to the smallest i.
Alignment viterbi_align(const AlignmentModel& model, const SentencePair& pair);

// Model 1 likelihood: q is uniform 1/(l+1).
double log_likelihood(const TTable& t, const std::vector<SentencePair>& pairs);
double log_likelihood(const AlignmentModel& model,
                      const std::vector<SentencePair>& pairs);

}  // namespace typoline
