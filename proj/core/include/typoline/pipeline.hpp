#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "typoline/corpus.hpp"
#include "typoline/typology.hpp"

namespace typoline {

struct PipelineConfig {
  std::filesystem::path pivot_tagged_path;
  std::filesystem::path lemma_a_path;
  std::filesystem::path lemma_b_path;
  std::filesystem::path corpus_dir;
  std::filesystem::path output_dir;
  std::filesystem::path labels_path;  // optional; empty skips classification
  size_t min_shared = 4;
  size_t min_other = 5;
  size_t vocab_size = 4000;
  int ibm1_iters = 5;
  int ibm2_iters = 5;
  std::set<PosTag> arg_tags = default_n1_arg_tags();
  std::set<PosTag> pred_tags = default_n1_pred_tags();
  N1Feature feature = N1Feature::Smoothed;
  int jobs = 1;
  bool resume = false;

  void validate() const;
};

// "key = value" lines, '#' comments.
PipelineConfig parse_pipeline_config(std::string_view text,
                                     const std::filesystem::path& base_dir);

struct LanguageResult {
  std::string iso;
  bool ok = false;
  std::string error;  // set when !ok
  size_t verses_tagged = 0;
  size_t verses_skipped = 0;
  N1Profile profile;
};

struct PipelineSummary {
  size_t selected_verses = 0;
  std::vector<LanguageResult> languages;  // ISO order
  size_t labeled = 0;
  size_t predicted = 0;
};

// Per language: filter -> tokenizer -> align -> project -> N1 profile;
// then GNB training on labeled rows and prediction on UNK rows. Failures
// are isolated per language.
PipelineSummary run_pipeline(const PipelineConfig& cfg,
                             const std::vector<std::string>& languages);

}  // namespace typoline
