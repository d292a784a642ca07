#include "typoline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <iostream>
#include <mutex>
#include <thread>

#include "typoline/aligner.hpp"
#include "typoline/bpe.hpp"
#include "typoline/io.hpp"
#include "typoline/projector.hpp"
#include "typoline/verse_filter.hpp"

namespace typoline {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::set<PosTag> parse_tag_set(std::string_view value) {
  std::set<PosTag> tags;
  size_t pos = 0;
  while (pos <= value.size()) {
    size_t comma = value.find(',', pos);
    std::string_view part = trim(comma == std::string_view::npos
                                     ? value.substr(pos)
                                     : value.substr(pos, comma - pos));
    if (!part.empty()) {
      auto tag = parse_pos_tag(part);
      if (!tag)
        throw Error(ErrorKind::UnknownTag,
                    "unknown tag '" + std::string(part) + "' in config");
      tags.insert(*tag);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return tags;
}

size_t parse_size(std::string_view s, std::string_view key) {
  size_t v = 0;
  auto sv = trim(s);
  auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size())
    throw Error(ErrorKind::MalformedLine,
                "bad value for " + std::string(key) + ": '" + std::string(s) + "'");
  return v;
}

std::map<std::string, WordOrderLabel> parse_labels_file(std::string_view text) {
  std::map<std::string, WordOrderLabel> labels;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw Error(ErrorKind::MalformedLine,
                  "labels line " + std::to_string(line_no) + ": missing tab");
    auto label = parse_word_order(trim(line.substr(tab + 1)));
    if (!label)
      throw Error(ErrorKind::MalformedLine,
                  "labels line " + std::to_string(line_no) + ": bad label");
    labels[std::string(trim(line.substr(0, tab)))] = *label;
  }
  return labels;
}

bool outputs_current(const std::vector<std::filesystem::path>& outputs,
                     const std::vector<std::filesystem::path>& inputs) {
  std::error_code ec;
  std::filesystem::file_time_type newest_input =
      std::filesystem::file_time_type::min();
  for (const auto& in : inputs) {
    auto t = std::filesystem::last_write_time(in, ec);
    if (ec) return false;
    newest_input = std::max(newest_input, t);
  }
  for (const auto& out : outputs) {
    auto t = std::filesystem::last_write_time(out, ec);
    if (ec || t < newest_input) return false;
  }
  return true;
}

LanguageResult process_language(const std::string& iso,
                                const PipelineConfig& cfg,
                                const TaggedCorpus& pivot,
                                const std::vector<VerseId>& selected_ids) {
  LanguageResult result;
  result.iso = iso;

  auto corpus_path = cfg.corpus_dir / (iso + ".txt");
  auto bpe_path = cfg.output_dir / (iso + ".bpe");
  auto model_path = cfg.output_dir / (iso + ".model");
  auto tagged_path = cfg.output_dir / (iso + ".tagged.txt");

  if (cfg.resume &&
      outputs_current({bpe_path, model_path, tagged_path},
                      {corpus_path, cfg.pivot_tagged_path})) {
    TaggedCorpus tagged = parse_tagged_file(read_file(tagged_path));
    tagged.language = iso;
    result.verses_tagged = tagged.verses.size();
    result.profile = n1_profile(tagged, cfg.arg_tags, cfg.pred_tags);
    result.ok = true;
    return result;
  }

  RawCorpus corpus = parse_verse_file(read_file(corpus_path));
  corpus.language = iso;

  std::vector<VerseId> ids =
      intersect_ids({selected_ids, corpus_ids(corpus)});
  if (ids.empty())
    throw Error(ErrorKind::EmptyCorpus,
                iso + ": no verses shared with the selected training set");

  RawCorpus training;
  training.language = iso;
  for (const auto& id : ids) training.verses.emplace(id, corpus.verses.at(id));

  BpeModel bpe = train_bpe(training, cfg.vocab_size);
  atomic_write_file(bpe_path, bpe.serialize());

  std::vector<SentencePair> pairs;
  pairs.reserve(ids.size());
  for (const auto& id : ids) {
    auto pit = pivot.verses.find(id);
    if (pit == pivot.verses.end()) continue;
    std::vector<std::string> pieces;
    for (const auto& tok : bpe.encode(training.verses.at(id)))
      pieces.push_back(tok.piece);
    pairs.push_back(SentencePair::make(std::move(pieces), pit->second.tokens()));
  }

  TTable t = train_ibm1(pairs, cfg.ibm1_iters);
  AlignmentModel model = train_ibm2(pairs, cfg.ibm2_iters, std::move(t));
  model.ibm1_iterations = cfg.ibm1_iters;
  atomic_write_file(model_path, model.serialize());

  ProjectionReport projection;
  TaggedCorpus tagged =
      project_corpus(model, corpus, bpe, pivot, ids, {}, &projection);
  atomic_write_file(tagged_path, serialize_tagged_file(tagged));
  result.verses_tagged = projection.projected;
  result.verses_skipped = projection.skipped;

  result.profile = n1_profile(tagged, cfg.arg_tags, cfg.pred_tags);
  result.ok = true;
  return result;
}

}  // namespace

void PipelineConfig::validate() const {
  if (pivot_tagged_path.empty() || lemma_a_path.empty() ||
      lemma_b_path.empty() || corpus_dir.empty() || output_dir.empty())
    throw Error(ErrorKind::Usage, "pipeline config: missing required path");
  if (vocab_size == 0 || ibm1_iters < 1 || ibm2_iters < 1 || jobs < 1)
    throw Error(ErrorKind::Usage, "pipeline config: counts must be positive");
}

PipelineConfig parse_pipeline_config(std::string_view text,
                                     const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  auto resolve = [&](std::string_view value) {
    std::filesystem::path p{std::string(trim(value))};
    return p.is_absolute() ? p : base_dir / p;
  };
  size_t pos = 0;
  size_t line_no = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    ++line_no;
    size_t next = end + 1;
    if (!line.empty() && line[0] != '#') {
      size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        throw Error(ErrorKind::MalformedLine,
                    "config line " + std::to_string(line_no) + ": expected key = value");
      std::string key{trim(line.substr(0, eq))};
      std::string_view value = trim(line.substr(eq + 1));
      if (key == "pivot_tagged") cfg.pivot_tagged_path = resolve(value);
      else if (key == "lemma_a") cfg.lemma_a_path = resolve(value);
      else if (key == "lemma_b") cfg.lemma_b_path = resolve(value);
      else if (key == "corpus_dir") cfg.corpus_dir = resolve(value);
      else if (key == "output_dir") cfg.output_dir = resolve(value);
      else if (key == "labels") cfg.labels_path = resolve(value);
      else if (key == "min_shared") cfg.min_shared = parse_size(value, key);
      else if (key == "min_other") cfg.min_other = parse_size(value, key);
      else if (key == "vocab_size") cfg.vocab_size = parse_size(value, key);
      else if (key == "ibm1_iters") cfg.ibm1_iters = static_cast<int>(parse_size(value, key));
      else if (key == "ibm2_iters") cfg.ibm2_iters = static_cast<int>(parse_size(value, key));
      else if (key == "arg_tags") cfg.arg_tags = parse_tag_set(value);
      else if (key == "pred_tags") cfg.pred_tags = parse_tag_set(value);
      else if (key == "feature") {
        auto f = parse_feature(value);
        if (!f)
          throw Error(ErrorKind::MalformedLine,
                      "config: unknown feature '" + std::string(value) + "'");
        cfg.feature = *f;
      } else {
        throw Error(ErrorKind::MalformedLine,
                    "config line " + std::to_string(line_no) + ": unknown key '" +
                        key + "'");
      }
    }
    if (end == text.size()) break;
    pos = next;
  }
  return cfg;
}

PipelineSummary run_pipeline(const PipelineConfig& cfg,
                             const std::vector<std::string>& languages) {
  cfg.validate();
  std::filesystem::create_directories(cfg.output_dir);

  TaggedCorpus pivot = parse_tagged_file(read_file(cfg.pivot_tagged_path));
  LemmaMap lemma_a = parse_lemma_file(read_file(cfg.lemma_a_path));
  LemmaMap lemma_b = parse_lemma_file(read_file(cfg.lemma_b_path));

  FilterReport filter = select_training_verses(
      lemma_a, lemma_b, pivot, identity_lemmas(), cfg.min_shared, cfg.min_other);
  {
    std::string ids_out;
    for (const auto& id : filter.selected) {
      ids_out += id.str();
      ids_out += '\n';
    }
    atomic_write_file(cfg.output_dir / "selected_ids.txt", ids_out);
  }

  PipelineSummary summary;
  summary.selected_verses = filter.selected.size();

  std::vector<std::string> sorted_langs = languages;
  std::sort(sorted_langs.begin(), sorted_langs.end());
  sorted_langs.erase(std::unique(sorted_langs.begin(), sorted_langs.end()),
                     sorted_langs.end());
  summary.languages.resize(sorted_langs.size());

  std::atomic<size_t> next_index{0};
  std::mutex log_mutex;
  auto worker = [&] {
    while (true) {
      size_t i = next_index.fetch_add(1);
      if (i >= sorted_langs.size()) return;
      const std::string& iso = sorted_langs[i];
      LanguageResult result;
      try {
        result = process_language(iso, cfg, pivot, filter.selected);
      } catch (const std::exception& ex) {
        result.iso = iso;
        result.ok = false;
        result.error = ex.what();
      }
      {
        std::lock_guard lock(log_mutex);
        std::cerr << "[" << iso << "] "
                  << (result.ok ? "tagged " + std::to_string(result.verses_tagged) +
                                      " verses"
                                : "FAILED: " + result.error)
                  << "\n";
      }
      summary.languages[i] = std::move(result);
    }
  };
  {
    size_t n_threads = std::min<size_t>(cfg.jobs, sorted_langs.size());
    std::vector<std::thread> threads;
    for (size_t i = 0; i + 1 < n_threads; ++i) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
  }

  {
    std::string profiles = "# iso\tnoun_first\tverb_first\tconsidered\traw\tsmoothed\n";
    for (const auto& result : summary.languages) {
      if (!result.ok) continue;
      N1Profile p = result.profile;
      p.language = result.iso;
      profiles += profile_tsv_row(p);
      profiles += '\n';
    }
    atomic_write_file(cfg.output_dir / "n1_profiles.tsv", profiles);
  }

  if (!cfg.labels_path.empty()) {
    auto labels = parse_labels_file(read_file(cfg.labels_path));
    std::vector<std::pair<double, WordOrderLabel>> training;
    std::vector<std::pair<std::string, double>> unknown;
    for (const auto& result : summary.languages) {
      if (!result.ok) continue;
      auto value = feature_value(result.profile, cfg.feature);
      if (!value) continue;
      auto it = labels.find(result.iso);
      if (it != labels.end() && it->second != WordOrderLabel::UNK)
        training.emplace_back(*value, it->second);
      else
        unknown.emplace_back(result.iso, *value);
    }
    summary.labeled = training.size();
    summary.predicted = unknown.size();
    if (!training.empty() && !unknown.empty()) {
      GnbModel gnb = gnb_train(training);
      atomic_write_file(cfg.output_dir / "gnb.model", gnb.serialize());
      std::string predictions = "# iso\tlabel\n";
      for (const auto& [iso, value] : unknown) {
        predictions += iso;
        predictions += '\t';
        predictions += to_string(gnb_predict(gnb, value).label);
        predictions += '\n';
      }
      atomic_write_file(cfg.output_dir / "predictions.tsv", predictions);
    }
  }
  return summary;
}

}  // namespace typoline
