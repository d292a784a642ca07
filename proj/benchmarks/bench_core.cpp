#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "typoline/aligner.hpp"
#include "typoline/bpe.hpp"
#include "typoline/corpus.hpp"
#include "typoline/typology.hpp"

using namespace typoline;

namespace {

RawCorpus random_corpus(size_t n_verses, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> letter(0, 25);
  std::uniform_int_distribution<int> word_len(2, 9);
  std::uniform_int_distribution<int> verse_len(4, 14);
  RawCorpus corpus;
  for (size_t i = 0; i < n_verses; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "40%06zu", i + 1);
    RawVerse v{VerseId{id}, {}};
    int len = verse_len(rng);
    for (int j = 0; j < len; ++j) {
      std::string w;
      int wl = word_len(rng);
      for (int k = 0; k < wl; ++k) w += static_cast<char>('a' + letter(rng));
      v.tokens.push_back(std::move(w));
    }
    corpus.verses.emplace(v.id, std::move(v));
  }
  return corpus;
}

std::vector<SentencePair> random_pairs(size_t n, uint32_t seed) {
  RawCorpus src = random_corpus(n, seed);
  RawCorpus tgt = random_corpus(n, seed + 1);
  std::vector<SentencePair> pairs;
  auto it = tgt.verses.begin();
  for (const auto& [id, verse] : src.verses) {
    pairs.push_back(SentencePair::make(verse.tokens, it->second.tokens));
    ++it;
  }
  return pairs;
}

}  // namespace

static void BM_BpeTrain(benchmark::State& state) {
  RawCorpus corpus = random_corpus(static_cast<size_t>(state.range(0)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(train_bpe(corpus, 400));
}
BENCHMARK(BM_BpeTrain)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_BpeEncode(benchmark::State& state) {
  RawCorpus corpus = random_corpus(500, 2);
  BpeModel model = train_bpe(corpus, 1000);
  for (auto _ : state)
    for (const auto& [id, verse] : corpus.verses)
      benchmark::DoNotOptimize(model.encode(verse));
}
BENCHMARK(BM_BpeEncode);

static void BM_Ibm1Iteration(benchmark::State& state) {
  auto pairs = random_pairs(static_cast<size_t>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(train_ibm1(pairs, 1));
}
BENCHMARK(BM_Ibm1Iteration)->Arg(200)->Arg(800);

static void BM_Ibm2Train(benchmark::State& state) {
  auto pairs = random_pairs(300, 4);
  TTable t = train_ibm1(pairs, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(train_ibm2(pairs, 3, t));
}
BENCHMARK(BM_Ibm2Train);

static void BM_N1Profile(benchmark::State& state) {
  std::string text;
  std::mt19937 rng(5);
  std::bernoulli_distribution noun_first(0.7);
  for (int i = 0; i < 2000; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "40%03d%03d", i / 1000 + 1, i % 1000);
    text += id;
    text += noun_first(rng) ? "\tdog/NOUN runs/VERB fast/ADV\n"
                            : "\truns/VERB dog/NOUN fast/ADV\n";
  }
  TaggedCorpus corpus = parse_tagged_file(text);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        n1_profile(corpus, default_n1_arg_tags(), default_n1_pred_tags()));
}
BENCHMARK(BM_N1Profile);

BENCHMARK_MAIN();
