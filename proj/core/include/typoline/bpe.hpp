#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "typoline/corpus.hpp"

namespace typoline {

// Word-initial boundary marker (U+2581, lower one eighth block).
inline constexpr std::string_view kBpeMarker = "▁";

struct SubwordToken {
  std::string piece;
  size_t word_index = 0;

  bool operator==(const SubwordToken&) const = default;
};

// Character alphabet plus ordered merge list for one language.
// The word-initial character is fused with the marker ("dog" starts as
// the symbols "▁d" "o" "g"), which makes decoding lossless.
class BpeModel {
 public:
  BpeModel() = default;
  BpeModel(std::set<std::string> alphabet,
           std::vector<std::pair<std::string, std::string>> merges);

  const std::set<std::string>& alphabet() const { return alphabet_; }
  const std::vector<std::pair<std::string, std::string>>& merges() const {
    return merges_;
  }

  std::vector<SubwordToken> encode(const RawVerse& verse) const;
  std::vector<SubwordToken> encode_word(const std::string& word,
                                        size_t word_index) const;

  // Exact inverse of encode. Throws on non-monotonic word_index.
  std::vector<std::string> decode(const std::vector<SubwordToken>& tokens) const;

  // "BPE v1 marker=▁" header, then one "left<TAB>right" merge per line.
  std::string serialize() const;
  static BpeModel deserialize(std::string_view text);

 private:
  std::set<std::string> alphabet_;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::set<std::string> symbols_;  // alphabet plus merge outputs
};

// Greedy BPE: repeatedly merge the most frequent adjacent pair until the
// vocabulary reaches vocab_size or no pair occurs twice. Frequency ties
// break to the lexicographically smallest (left, right). No case folding.
BpeModel train_bpe(const RawCorpus& corpus, size_t vocab_size);

}  // namespace typoline
