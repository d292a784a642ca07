#include <charconv>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "typoline/aligner.hpp"
#include "typoline/bpe.hpp"
#include "typoline/corpus.hpp"
#include "typoline/io.hpp"
#include "typoline/pipeline.hpp"
#include "typoline/projector.hpp"
#include "typoline/typology.hpp"
#include "typoline/validate.hpp"
#include "typoline/verse_filter.hpp"

namespace fs = std::filesystem;
using namespace typoline;

namespace {

std::set<PosTag> tag_set_from_csv(const std::string& csv) {
  std::set<PosTag> tags;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    std::string part = comma == std::string::npos
                           ? csv.substr(pos)
                           : csv.substr(pos, comma - pos);
    if (!part.empty()) {
      auto tag = parse_pos_tag(part);
      if (!tag) throw Error(ErrorKind::UnknownTag, "unknown tag '" + part + "'");
      tags.insert(*tag);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return tags;
}

std::vector<VerseId> load_id_file(const fs::path& path) {
  std::string text = read_file(path);
  std::vector<VerseId> ids;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line{text.data() + pos, end - pos};
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    ids.emplace_back(line);
  }
  return ids;
}

// "# ..." header lines skipped; returns rows in file order.
std::vector<N1Profile> load_profiles(const fs::path& path) {
  std::string text = read_file(path);
  std::vector<N1Profile> profiles;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line{text.data() + pos, end - pos};
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    profiles.push_back(parse_profile_tsv_row(line));
  }
  return profiles;
}

std::map<std::string, WordOrderLabel> load_labels(const fs::path& path) {
  std::string text = read_file(path);
  std::map<std::string, WordOrderLabel> labels;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line{text.data() + pos, end - pos};
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw Error(ErrorKind::MalformedLine,
                  "labels line " + std::to_string(line_no) + ": missing tab");
    auto label = parse_word_order(line.substr(tab + 1));
    if (!label)
      throw Error(ErrorKind::MalformedLine,
                  "labels line " + std::to_string(line_no) + ": bad label '" +
                      std::string(line.substr(tab + 1)) + "'");
    labels[std::string(line.substr(0, tab))] = *label;
  }
  return labels;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    atomic_write_file(out_path, content);
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string iso_from_path(const fs::path& path) {
  std::string stem = path.filename().string();
  size_t dot = stem.find('.');
  if (dot != std::string::npos) stem.resize(dot);
  return stem;
}

int cmd_filter_verses(const std::string& lemma_a, const std::string& lemma_b,
                      const std::string& pivot_path, size_t min_shared,
                      size_t min_other, const std::string& out_path) {
  auto a = parse_lemma_file(read_file(lemma_a));
  auto b = parse_lemma_file(read_file(lemma_b));
  auto pivot = parse_tagged_file(read_file(pivot_path));
  FilterReport report = select_training_verses(a, b, pivot, identity_lemmas(),
                                               min_shared, min_other);
  std::string out;
  for (const auto& id : report.selected) {
    out += id.str();
    out += '\n';
  }
  emit(out, out_path);
  std::cerr << "input=" << report.input_count
            << " after_lemma_overlap=" << report.after_lemma_overlap
            << " after_verb_support=" << report.after_verb_support << "\n";
  return 0;
}

int cmd_train_tokenizer(const std::string& corpus_path,
                        const std::string& model_out, size_t vocab_size) {
  RawCorpus corpus = parse_verse_file(read_file(corpus_path));
  BpeModel model = train_bpe(corpus, vocab_size);
  atomic_write_file(model_out, model.serialize());
  std::cerr << "alphabet=" << model.alphabet().size()
            << " merges=" << model.merges().size() << "\n";
  return 0;
}

int cmd_align(const std::string& source_path, const std::string& pivot_path,
              const std::string& ids_path, const std::string& model_out,
              const std::string& bpe_path, int ibm1_iters, int ibm2_iters) {
  RawCorpus source = parse_verse_file(read_file(source_path));
  TaggedCorpus pivot = parse_tagged_file(read_file(pivot_path));
  std::vector<VerseId> ids = load_id_file(ids_path);

  BpeModel bpe;
  bool use_bpe = !bpe_path.empty();
  if (use_bpe) bpe = BpeModel::deserialize(read_file(bpe_path));

  std::vector<SentencePair> pairs;
  for (const auto& id : ids) {
    auto sit = source.verses.find(id);
    auto pit = pivot.verses.find(id);
    if (sit == source.verses.end() || pit == pivot.verses.end()) continue;
    std::vector<std::string> pieces;
    if (use_bpe) {
      for (const auto& tok : bpe.encode(sit->second)) pieces.push_back(tok.piece);
    } else {
      pieces = sit->second.tokens;
    }
    pairs.push_back(SentencePair::make(std::move(pieces), pit->second.tokens()));
  }

  TTable t = train_ibm1(pairs, ibm1_iters);
  AlignmentModel model = train_ibm2(pairs, ibm2_iters, std::move(t));
  model.ibm1_iterations = ibm1_iters;
  atomic_write_file(model_out, model.serialize());
  std::cerr << "pairs=" << pairs.size() << " t_entries=" << model.t.size()
            << "\n";
  return 0;
}

int cmd_project(const std::string& model_path, const std::string& bpe_path,
                const std::string& source_path, const std::string& pivot_path,
                const std::string& ids_path, const std::string& out_path) {
  AlignmentModel model = AlignmentModel::deserialize(read_file(model_path));
  BpeModel bpe = BpeModel::deserialize(read_file(bpe_path));
  RawCorpus source = parse_verse_file(read_file(source_path));
  TaggedCorpus pivot = parse_tagged_file(read_file(pivot_path));
  std::vector<VerseId> ids = ids_path.empty()
                                 ? intersect_ids({corpus_ids(source),
                                                  corpus_ids(pivot)})
                                 : load_id_file(ids_path);
  ProjectionReport report;
  TaggedCorpus tagged =
      project_corpus(model, source, bpe, pivot, ids, {}, &report);
  emit(serialize_tagged_file(tagged), out_path);
  std::cerr << "projected=" << report.projected << " skipped=" << report.skipped
            << "\n";
  return 0;
}

int cmd_extract_n1(const std::vector<std::string>& tagged_paths,
                   const std::string& arg_csv, const std::string& pred_csv,
                   const std::string& out_path) {
  auto arg_tags = tag_set_from_csv(arg_csv);
  auto pred_tags = tag_set_from_csv(pred_csv);
  std::string out =
      "# iso\tnoun_first\tverb_first\tconsidered\traw\tsmoothed\n";
  for (const auto& path : tagged_paths) {
    TaggedCorpus corpus = parse_tagged_file(read_file(path));
    corpus.language = iso_from_path(path);
    out += profile_tsv_row(n1_profile(corpus, arg_tags, pred_tags));
    out += '\n';
  }
  emit(out, out_path);
  return 0;
}

int cmd_train_classifier(const std::string& profiles_path,
                         const std::string& labels_path,
                         const std::string& feature_name,
                         const std::string& model_out) {
  auto feature = parse_feature(feature_name);
  if (!feature)
    throw Error(ErrorKind::Usage, "unknown feature '" + feature_name + "'");
  auto profiles = load_profiles(profiles_path);
  auto labels = load_labels(labels_path);
  std::vector<std::pair<double, WordOrderLabel>> samples;
  for (const auto& p : profiles) {
    auto it = labels.find(p.language);
    if (it == labels.end() || it->second == WordOrderLabel::UNK) continue;
    auto value = feature_value(p, *feature);
    if (value) samples.emplace_back(*value, it->second);
  }
  GnbModel model = gnb_train(samples);
  atomic_write_file(model_out, model.serialize());
  std::cerr << "samples=" << samples.size() << " classes="
            << model.classes.size() << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& profiles_path,
                const std::string& labels_path, const std::string& feature_name,
                const std::string& out_path) {
  auto feature = parse_feature(feature_name);
  if (!feature)
    throw Error(ErrorKind::Usage, "unknown feature '" + feature_name + "'");
  GnbModel model = GnbModel::deserialize(read_file(model_path));
  auto profiles = load_profiles(profiles_path);
  std::map<std::string, WordOrderLabel> labels;
  if (!labels_path.empty()) labels = load_labels(labels_path);

  std::string out = "# iso\tlabel";
  for (const auto& c : model.classes) {
    out += "\tp_";
    out += to_string(c.label);
  }
  out += '\n';
  for (const auto& p : profiles) {
    if (!labels_path.empty()) {
      auto it = labels.find(p.language);
      if (it != labels.end() && it->second != WordOrderLabel::UNK) continue;
    }
    auto value = feature_value(p, *feature);
    if (!value) continue;
    GnbPrediction pred = gnb_predict(model, *value);
    out += p.language;
    out += '\t';
    out += to_string(pred.label);
    for (const auto& c : model.classes) {
      out += '\t';
      out += format_double(pred.posteriors.at(c.label));
    }
    out += '\n';
  }
  emit(out, out_path);
  return 0;
}

int cmd_validate_tags(const std::string& reference_path,
                      const std::string& hypothesis_path,
                      const std::string& tags_csv,
                      const std::string& out_path) {
  auto tags = tag_set_from_csv(tags_csv);
  TaggedCorpus reference = parse_tagged_file(read_file(reference_path));
  TaggedCorpus hypothesis = parse_tagged_file(read_file(hypothesis_path));
  AgreementReport report = tag_agreement(reference, hypothesis, tags);
  std::string out =
      "# tag agreement: recall against reference (matched / reference-tagged "
      "tokens)\n";
  out += "# compared_verses=" + std::to_string(report.compared_verses) +
         " skipped_verses=" + std::to_string(report.skipped_verses) + "\n";
  out += "# tag\tmatched\treference_total\trate\n";
  for (const auto& [tag, agreement] : report.per_tag) {
    out += to_string(tag);
    out += '\t';
    out += std::to_string(agreement.matched);
    out += '\t';
    out += std::to_string(agreement.reference_total);
    out += '\t';
    auto rate = agreement.rate();
    out += rate ? format_double(*rate) : "NA";
    out += '\n';
  }
  emit(out, out_path);
  return 0;
}

int cmd_gold_overlap(const std::string& gold_path,
                     const std::string& hypothesis_path,
                     const std::string& tags_csv, const std::string& out_path) {
  auto tags = tag_set_from_csv(tags_csv);
  TaggedCorpus gold = parse_tagged_file(read_file(gold_path));
  TaggedCorpus hypothesis = parse_tagged_file(read_file(hypothesis_path));
  OverlapReport report = gold_overlap(gold, hypothesis, tags);
  std::string out = "# shared (form, tag) pairs after NFC + case folding\n";
  out += "# tag\tcount\tforms\n";
  for (const auto& [tag, forms] : report.per_tag) {
    out += to_string(tag);
    out += '\t';
    out += std::to_string(forms.size());
    for (const auto& form : forms) {
      out += '\t';
      out += form;
    }
    out += '\n';
  }
  emit(out, out_path);
  return 0;
}

int cmd_anova(const std::string& profiles_path, const std::string& labels_path,
              const std::string& feature_name, const std::string& out_path) {
  auto feature = parse_feature(feature_name);
  if (!feature)
    throw Error(ErrorKind::Usage, "unknown feature '" + feature_name + "'");
  auto profiles = load_profiles(profiles_path);
  auto labels = load_labels(labels_path);
  std::map<WordOrderLabel, std::vector<double>> groups;
  for (const auto& p : profiles) {
    auto it = labels.find(p.language);
    if (it == labels.end() || it->second == WordOrderLabel::UNK) continue;
    auto value = feature_value(p, *feature);
    if (value) groups[it->second].push_back(*value);
  }
  AnovaResult result = anova_oneway(groups);
  std::string out = "# one-way ANOVA, feature=";
  out += to_string(*feature);
  out += '\n';
  out += "f_stat\t" + format_double(result.f_stat) + "\n";
  out += "df_between\t" + std::to_string(result.df_between) + "\n";
  out += "df_within\t" + std::to_string(result.df_within) + "\n";
  out += "p_value\t";
  out += result.p_value < 1e-300 ? "<1e-300" : format_double(result.p_value);
  out += '\n';
  for (const auto& [label, mean] : result.group_means)
    out += "mean_" + std::string(to_string(label)) + "\t" +
           format_double(mean) + "\n";
  for (const auto& [pair, diff] : result.pairwise_mean_diffs)
    out += "diff_" + std::string(to_string(pair.first)) + "_" +
           std::string(to_string(pair.second)) + "\t" + format_double(diff) +
           "\n";
  emit(out, out_path);
  return 0;
}

int cmd_summary(const std::vector<std::string>& tagged_paths,
                const std::string& arg_csv, const std::string& pred_csv,
                const std::string& out_path) {
  auto arg_tags = tag_set_from_csv(arg_csv);
  auto pred_tags = tag_set_from_csv(pred_csv);
  std::string out = "# iso\tverses\tunique_arguments\tunique_predicates\n";
  double sum_args = 0, sum_preds = 0;
  for (const auto& path : tagged_paths) {
    TaggedCorpus corpus = parse_tagged_file(read_file(path));
    CorpusStats stats = summary_stats(corpus, arg_tags, pred_tags);
    out += iso_from_path(path);
    out += '\t';
    out += std::to_string(stats.verse_count);
    out += '\t';
    out += std::to_string(stats.unique_arguments);
    out += '\t';
    out += std::to_string(stats.unique_predicates);
    out += '\n';
    sum_args += static_cast<double>(stats.unique_arguments);
    sum_preds += static_cast<double>(stats.unique_predicates);
  }
  if (tagged_paths.size() > 1) {
    double n = static_cast<double>(tagged_paths.size());
    out += "# mean\t-\t" + format_double(sum_args / n) + "\t" +
           format_double(sum_preds / n) + "\n";
  }
  emit(out, out_path);
  return 0;
}

int cmd_run_pipeline(const std::string& config_path,
                     const std::string& manifest_path, int jobs, bool resume) {
  fs::path cfg_path{config_path};
  PipelineConfig cfg = parse_pipeline_config(
      read_file(cfg_path), fs::absolute(cfg_path).parent_path());
  cfg.jobs = jobs;
  cfg.resume = resume;

  std::vector<std::string> languages;
  std::string manifest = read_file(manifest_path);
  size_t pos = 0;
  while (pos < manifest.size()) {
    size_t end = manifest.find('\n', pos);
    if (end == std::string::npos) end = manifest.size();
    std::string_view line{manifest.data() + pos, end - pos};
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line[0] != '#') languages.emplace_back(line);
  }

  PipelineSummary summary = run_pipeline(cfg, languages);
  size_t failed = 0;
  for (const auto& lang : summary.languages)
    if (!lang.ok) ++failed;
  std::cerr << "selected_verses=" << summary.selected_verses
            << " languages=" << summary.languages.size() << " failed=" << failed
            << " labeled=" << summary.labeled
            << " predicted=" << summary.predicted << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel-corpus tagging and word-order typology pipeline"};
  app.require_subcommand(1);

  // filter-verses
  std::string fv_lemma_a, fv_lemma_b, fv_pivot, fv_out;
  size_t fv_min_shared = 4, fv_min_other = 5;
  auto* filter_verses =
      app.add_subcommand("filter-verses", "Select training verses");
  filter_verses->add_option("--lemma-a", fv_lemma_a)->required();
  filter_verses->add_option("--lemma-b", fv_lemma_b)->required();
  filter_verses->add_option("--pivot", fv_pivot)->required();
  filter_verses->add_option("--min-shared", fv_min_shared);
  filter_verses->add_option("--min-other", fv_min_other);
  filter_verses->add_option("-o,--output", fv_out);

  // train-tokenizer
  std::string tt_corpus, tt_out;
  size_t tt_vocab = 4000;
  auto* train_tokenizer =
      app.add_subcommand("train-tokenizer", "Train a BPE subword tokenizer");
  train_tokenizer->add_option("--vocab-size", tt_vocab);
  train_tokenizer->add_option("corpus", tt_corpus)->required();
  train_tokenizer->add_option("model-out", tt_out)->required();

  // align
  std::string al_source, al_pivot, al_ids, al_out, al_bpe;
  int al_ibm1 = 5, al_ibm2 = 5;
  auto* align = app.add_subcommand("align", "Train IBM Model 1 + 2");
  align->add_option("--ibm1-iters", al_ibm1);
  align->add_option("--ibm2-iters", al_ibm2);
  align->add_option("--bpe", al_bpe, "Subword model for the source side");
  align->add_option("source", al_source)->required();
  align->add_option("pivot", al_pivot)->required();
  align->add_option("ids", al_ids)->required();
  align->add_option("model-out", al_out)->required();

  // project
  std::string pr_model, pr_bpe, pr_source, pr_pivot, pr_ids, pr_out;
  auto* project = app.add_subcommand("project", "Project POS tags");
  project->add_option("model", pr_model)->required();
  project->add_option("bpe-model", pr_bpe)->required();
  project->add_option("source", pr_source)->required();
  project->add_option("pivot", pr_pivot)->required();
  project->add_option("--ids", pr_ids);
  project->add_option("-o,--output", pr_out);

  // extract-n1
  std::vector<std::string> n1_files;
  std::string n1_args = "NOUN", n1_preds = "VERB", n1_out;
  auto* extract_n1 = app.add_subcommand("extract-n1", "Compute N1 profiles");
  extract_n1->add_option("tagged-files", n1_files)->required();
  extract_n1->add_option("--arg-tags", n1_args);
  extract_n1->add_option("--pred-tags", n1_preds);
  extract_n1->add_option("-o,--output", n1_out);

  // train-classifier
  std::string tc_profiles, tc_labels, tc_feature = "smoothed", tc_out;
  auto* train_classifier =
      app.add_subcommand("train-classifier", "Train the GNB word-order model");
  train_classifier->add_option("--profiles", tc_profiles)->required();
  train_classifier->add_option("--labels", tc_labels)->required();
  train_classifier->add_option("--feature", tc_feature);
  train_classifier->add_option("-o,--output", tc_out)->required();

  // predict
  std::string pd_model, pd_profiles, pd_labels, pd_feature = "smoothed", pd_out;
  auto* predict = app.add_subcommand("predict", "Predict word order");
  predict->add_option("--model", pd_model)->required();
  predict->add_option("--profiles", pd_profiles)->required();
  predict->add_option("--labels", pd_labels,
                      "Skip languages already labeled here");
  predict->add_option("--feature", pd_feature);
  predict->add_option("-o,--output", pd_out);

  // validate-tags
  std::string vt_reference, vt_hypothesis, vt_tags = "NOUN,VERB", vt_out;
  auto* validate_tags =
      app.add_subcommand("validate-tags", "Agreement with a reference tagger");
  validate_tags->add_option("reference", vt_reference)->required();
  validate_tags->add_option("hypothesis", vt_hypothesis)->required();
  validate_tags->add_option("--tags", vt_tags);
  validate_tags->add_option("-o,--output", vt_out);

  // gold-overlap
  std::string go_gold, go_hypothesis, go_tags = "NOUN,VERB", go_out;
  auto* gold_overlap_cmd =
      app.add_subcommand("gold-overlap", "Form+tag overlap with a gold corpus");
  gold_overlap_cmd->add_option("gold", go_gold)->required();
  gold_overlap_cmd->add_option("hypothesis", go_hypothesis)->required();
  gold_overlap_cmd->add_option("--tags", go_tags);
  gold_overlap_cmd->add_option("-o,--output", go_out);

  // anova
  std::string an_profiles, an_labels, an_feature = "smoothed", an_out;
  auto* anova = app.add_subcommand("anova", "One-way ANOVA across word orders");
  anova->add_option("--profiles", an_profiles)->required();
  anova->add_option("--labels", an_labels)->required();
  anova->add_option("--feature", an_feature);
  anova->add_option("-o,--output", an_out);

  // summary
  std::vector<std::string> su_files;
  std::string su_args = "NOUN,PROPN", su_preds = "VERB", su_out;
  auto* summary = app.add_subcommand("summary", "Corpus summary statistics");
  summary->add_option("tagged-files", su_files)->required();
  summary->add_option("--arg-tags", su_args);
  summary->add_option("--pred-tags", su_preds);
  summary->add_option("-o,--output", su_out);

  // run-pipeline
  std::string rp_config, rp_manifest;
  int rp_jobs = 1;
  bool rp_resume = false;
  auto* run = app.add_subcommand("run-pipeline", "Run the full pipeline");
  run->add_option("--config", rp_config)->required();
  run->add_option("manifest", rp_manifest)->required();
  run->add_option("--jobs", rp_jobs);
  run->add_flag("--resume", rp_resume);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*filter_verses)
      return cmd_filter_verses(fv_lemma_a, fv_lemma_b, fv_pivot, fv_min_shared,
                               fv_min_other, fv_out);
    if (*train_tokenizer) return cmd_train_tokenizer(tt_corpus, tt_out, tt_vocab);
    if (*align)
      return cmd_align(al_source, al_pivot, al_ids, al_out, al_bpe, al_ibm1,
                       al_ibm2);
    if (*project)
      return cmd_project(pr_model, pr_bpe, pr_source, pr_pivot, pr_ids, pr_out);
    if (*extract_n1) return cmd_extract_n1(n1_files, n1_args, n1_preds, n1_out);
    if (*train_classifier)
      return cmd_train_classifier(tc_profiles, tc_labels, tc_feature, tc_out);
    if (*predict)
      return cmd_predict(pd_model, pd_profiles, pd_labels, pd_feature, pd_out);
    if (*validate_tags)
      return cmd_validate_tags(vt_reference, vt_hypothesis, vt_tags, vt_out);
    if (*gold_overlap_cmd)
      return cmd_gold_overlap(go_gold, go_hypothesis, go_tags, go_out);
    if (*anova) return cmd_anova(an_profiles, an_labels, an_feature, an_out);
    if (*summary) return cmd_summary(su_files, su_args, su_preds, su_out);
    if (*run) return cmd_run_pipeline(rp_config, rp_manifest, rp_jobs, rp_resume);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
