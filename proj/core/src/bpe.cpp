#include "typoline/bpe.hpp"

#include <algorithm>
#include <map>

#include "typoline/unicode.hpp"

namespace typoline {

namespace {

// Splits UTF-8 text into one string per codepoint.
std::vector<std::string> split_chars(std::string_view word) {
  std::vector<std::string> out;
  for (char32_t cp : unicode::decode_utf8(word)) {
    std::string c;
    unicode::append_utf8(c, cp);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::string> initial_symbols(std::string_view word, bool fuse) {
  std::vector<std::string> syms = split_chars(word);
  if (syms.empty()) return syms;
  if (fuse) {
    syms[0] = std::string(kBpeMarker) + syms[0];
  } else {
    syms.insert(syms.begin(), std::string(kBpeMarker));
  }
  return syms;
}

void apply_merge(std::vector<std::string>& syms, const std::string& left,
                 const std::string& right) {
  size_t w = 0;
  for (size_t r = 0; r < syms.size(); ++r) {
    if (w > 0 && syms[w - 1] == left && syms[r] == right) {
      syms[w - 1] += syms[r];
    } else {
      if (w != r) syms[w] = std::move(syms[r]);
      ++w;
    }
  }
  syms.resize(w);
}

}  // namespace

BpeModel::BpeModel(std::set<std::string> alphabet,
                   std::vector<std::pair<std::string, std::string>> merges)
    : alphabet_(std::move(alphabet)), merges_(std::move(merges)) {
  symbols_ = alphabet_;
  for (const auto& [l, r] : merges_) {
    symbols_.insert(l);
    symbols_.insert(r);
    symbols_.insert(l + r);
  }
}

std::vector<SubwordToken> BpeModel::encode_word(const std::string& word,
                                                size_t word_index) const {
  std::vector<std::string> chars = split_chars(word);
  bool fuse = !chars.empty() &&
              symbols_.count(std::string(kBpeMarker) + chars[0]) > 0;
  std::vector<std::string> syms = initial_symbols(word, fuse);
  for (const auto& [l, r] : merges_) apply_merge(syms, l, r);
  std::vector<SubwordToken> out;
  out.reserve(syms.size());
  for (auto& s : syms) out.push_back({std::move(s), word_index});
  return out;
}

std::vector<SubwordToken> BpeModel::encode(const RawVerse& verse) const {
  std::vector<SubwordToken> out;
  for (size_t w = 0; w < verse.tokens.size(); ++w) {
    auto pieces = encode_word(verse.tokens[w], w);
    out.insert(out.end(), std::make_move_iterator(pieces.begin()),
               std::make_move_iterator(pieces.end()));
  }
  return out;
}

std::vector<std::string> BpeModel::decode(
    const std::vector<SubwordToken>& tokens) const {
  std::vector<std::string> words;
  size_t prev_index = 0;
  std::string current;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    std::string_view w = current;
    if (w.substr(0, kBpeMarker.size()) == kBpeMarker)
      w.remove_prefix(kBpeMarker.size());
    words.emplace_back(w);
    current.clear();
  };
  for (const auto& tok : tokens) {
    if (open && tok.word_index < prev_index)
      throw Error(ErrorKind::NonMonotonicWordIndex,
                  "word_index decreased from " + std::to_string(prev_index) +
                      " to " + std::to_string(tok.word_index));
    if (open && tok.word_index != prev_index) flush();
    current += tok.piece;
    prev_index = tok.word_index;
    open = true;
  }
  flush();
  return words;
}

std::string BpeModel::serialize() const {
  std::string out = "BPE v1 marker=";
  out += kBpeMarker;
  out += '\n';
  for (const auto& [l, r] : merges_) {
    out += l;
    out += '\t';
    out += r;
    out += '\n';
  }
  return out;
}

BpeModel BpeModel::deserialize(std::string_view text) {
  size_t nl = text.find('\n');
  std::string_view header = nl == std::string_view::npos ? text : text.substr(0, nl);
  if (header.substr(0, 14) != "BPE v1 marker=")
    throw Error(ErrorKind::MalformedLine, "bad BPE model header");
  std::vector<std::pair<std::string, std::string>> merges;
  size_t pos = nl == std::string_view::npos ? text.size() : nl + 1;
  size_t line_no = 1;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw Error(ErrorKind::MalformedLine,
                  "BPE model line " + std::to_string(line_no) + ": missing tab");
    merges.emplace_back(std::string(line.substr(0, tab)),
                        std::string(line.substr(tab + 1)));
  }
  return BpeModel({}, std::move(merges));
}

BpeModel train_bpe(const RawCorpus& corpus, size_t vocab_size) {
  if (corpus.verses.empty())
    throw Error(ErrorKind::EmptyCorpus, "cannot train BPE on empty corpus");

  // Distinct words with corpus frequencies; merges operate on this table.
  std::map<std::string, size_t> word_freq;
  for (const auto& [id, verse] : corpus.verses)
    for (const auto& tok : verse.tokens) ++word_freq[tok];

  std::set<std::string> alphabet;
  std::vector<std::pair<std::vector<std::string>, size_t>> words;
  words.reserve(word_freq.size());
  for (const auto& [word, freq] : word_freq) {
    auto syms = initial_symbols(word, /*fuse=*/true);
    for (const auto& s : syms) alphabet.insert(s);
    words.emplace_back(std::move(syms), freq);
  }

  std::vector<std::pair<std::string, std::string>> merges;
  size_t vocab = alphabet.size();
  while (vocab < vocab_size) {
    std::map<std::pair<std::string, std::string>, size_t> pair_freq;
    for (const auto& [syms, freq] : words)
      for (size_t i = 0; i + 1 < syms.size(); ++i)
        pair_freq[{syms[i], syms[i + 1]}] += freq;

    const std::pair<std::string, std::string>* best = nullptr;
    size_t best_freq = 0;
    for (const auto& [pair, freq] : pair_freq) {
      // std::map iterates in key order, so the first maximum is the
      // lexicographically smallest pair.
      if (freq > best_freq) {
        best = &pair;
        best_freq = freq;
      }
    }
    if (best == nullptr || best_freq < 2) break;

    merges.push_back(*best);
    for (auto& [syms, freq] : words) apply_merge(syms, best->first, best->second);
    ++vocab;
  }
  return BpeModel(std::move(alphabet), std::move(merges));
}

}  // namespace typoline
