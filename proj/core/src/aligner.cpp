#include "typoline/aligner.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace typoline {

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::MalformedLine,
                "bad number '" + std::string(s) + "' in model file");
  return v;
}

long parse_long(std::string_view s) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::MalformedLine,
                "bad integer '" + std::string(s) + "' in model file");
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

void check_training_input(const std::vector<SentencePair>& pairs, int iterations) {
  if (pairs.empty())
    throw Error(ErrorKind::EmptyTrainingSet, "no sentence pairs to train on");
  if (iterations < 1)
    throw std::invalid_argument("iterations must be >= 1");
}

}  // namespace

SentencePair SentencePair::make(std::vector<std::string> source_pieces,
                                std::vector<std::string> pivot_words) {
  SentencePair pair;
  pair.source = std::move(source_pieces);
  pair.target.reserve(pivot_words.size() + 1);
  pair.target.emplace_back(kNullWord);
  for (auto& w : pivot_words) pair.target.push_back(std::move(w));
  return pair;
}

double AlignmentModel::lexical_prob(const std::string& f,
                                    const std::string& e) const {
  auto eit = t.find(e);
  if (eit == t.end()) return kProbFloor;
  auto fit = eit->second.find(f);
  return fit == eit->second.end() ? kProbFloor : fit->second;
}

double AlignmentModel::distortion_prob(int i, int j, int l, int m) const {
  auto it = q.find({l, m});
  if (it == q.end() || j >= static_cast<int>(it->second.size()))
    return 1.0 / (l + 1);
  return it->second[j][i];
}

TTable train_ibm1(const std::vector<SentencePair>& pairs, int iterations,
                  std::vector<double>* likelihood_history) {
  check_training_input(pairs, iterations);

  // Uniform over the source symbols each target word co-occurs with.
  TTable t;
  for (const auto& pair : pairs)
    for (const auto& e : pair.target)
      for (const auto& f : pair.source) t[e][f] = 0.0;
  for (auto& [e, row] : t)
    for (auto& [f, p] : row) p = 1.0 / row.size();

  for (int iter = 0; iter < iterations; ++iter) {
    TTable counts;
    std::map<std::string, double> totals;
    double ll = 0.0;
    for (const auto& pair : pairs) {
      size_t l1 = pair.target.size();  // l + 1 including NULL
      for (const auto& f : pair.source) {
        double denom = 0.0;
        for (const auto& e : pair.target) denom += t[e][f];
        ll += std::log(denom / static_cast<double>(l1));
        for (const auto& e : pair.target) {
          double delta = t[e][f] / denom;
          counts[e][f] += delta;
          totals[e] += delta;
        }
      }
    }
    if (likelihood_history) likelihood_history->push_back(ll);
    for (auto& [e, row] : counts) {
      double total = totals[e];
      for (auto& [f, c] : row) t[e][f] = c / total;
    }
  }
  return t;
}

AlignmentModel train_ibm2(const std::vector<SentencePair>& pairs, int iterations,
                          TTable init_t) {
  check_training_input(pairs, iterations);

  AlignmentModel model;
  model.t = std::move(init_t);
  for (const auto& pair : pairs) {
    int l = static_cast<int>(pair.target.size()) - 1;
    int m = static_cast<int>(pair.source.size());
    auto& table = model.q[{l, m}];
    if (table.empty())
      table.assign(m, std::vector<double>(l + 1, 1.0 / (l + 1)));
  }

  for (int iter = 0; iter < iterations; ++iter) {
    TTable t_counts;
    std::map<std::string, double> t_totals;
    QTable q_counts;
    std::map<DistortionKey, std::vector<double>> q_totals;

    for (const auto& pair : pairs) {
      int l = static_cast<int>(pair.target.size()) - 1;
      int m = static_cast<int>(pair.source.size());
      DistortionKey key{l, m};
      const auto& q = model.q[key];
      auto& qc = q_counts[key];
      auto& qt = q_totals[key];
      if (qc.empty()) {
        qc.assign(m, std::vector<double>(l + 1, 0.0));
        qt.assign(m, 0.0);
      }
      for (int j = 0; j < m; ++j) {
        const std::string& f = pair.source[j];
        double denom = 0.0;
        for (int i = 0; i <= l; ++i)
          denom += q[j][i] * model.t[pair.target[i]][f];
        for (int i = 0; i <= l; ++i) {
          double delta = q[j][i] * model.t[pair.target[i]][f] / denom;
          t_counts[pair.target[i]][f] += delta;
          t_totals[pair.target[i]] += delta;
          qc[j][i] += delta;
          qt[j] += delta;
        }
      }
    }

    for (auto& [e, row] : t_counts) {
      double total = t_totals[e];
      for (auto& [f, c] : row) model.t[e][f] = c / total;
    }
    for (auto& [key, table] : q_counts) {
      auto& q = model.q[key];
      const auto& totals = q_totals[key];
      for (size_t j = 0; j < table.size(); ++j)
        for (size_t i = 0; i < table[j].size(); ++i)
          q[j][i] = table[j][i] / totals[j];
    }
  }
  model.ibm2_iterations = iterations;
  return model;
}

Alignment viterbi_align(const AlignmentModel& model, const SentencePair& pair) {
  int l = static_cast<int>(pair.target.size()) - 1;
  int m = static_cast<int>(pair.source.size());
  Alignment a;
  a.links.reserve(m);
  for (int j = 0; j < m; ++j) {
    int best_i = 0;
    double best_score = -1.0;
    for (int i = 0; i <= l; ++i) {
      double score = model.distortion_prob(i, j, l, m) *
                     model.lexical_prob(pair.source[j], pair.target[i]);
      if (score > best_score) {
        best_score = score;
        best_i = i;
      }
    }
    a.links.push_back(best_i);
  }
  return a;
}

double log_likelihood(const TTable& t, const std::vector<SentencePair>& pairs) {
  AlignmentModel model;
  model.t = t;
  return log_likelihood(model, pairs);
}

double log_likelihood(const AlignmentModel& model,
                      const std::vector<SentencePair>& pairs) {
  double ll = 0.0;
  for (const auto& pair : pairs) {
    int l = static_cast<int>(pair.target.size()) - 1;
    int m = static_cast<int>(pair.source.size());
    for (int j = 0; j < m; ++j) {
      double sum = 0.0;
      for (int i = 0; i <= l; ++i)
        sum += model.distortion_prob(i, j, l, m) *
               model.lexical_prob(pair.source[j], pair.target[i]);
      ll += std::log(sum);
    }
  }
  return ll;
}

std::string AlignmentModel::serialize() const {
  std::string out = "T\n";
  for (const auto& [e, row] : t) {
    for (const auto& [f, p] : row) {
      if (p < 1e-6) continue;
      out += f;
      out += '\t';
      out += e;
      out += '\t';
      append_double(out, p);
      out += '\n';
    }
  }
  out += "Q\n";
  for (const auto& [key, table] : q) {
    for (size_t j = 0; j < table.size(); ++j) {
      for (size_t i = 0; i < table[j].size(); ++i) {
        out += std::to_string(i);
        out += '\t';
        out += std::to_string(j);
        out += '\t';
        out += std::to_string(key.target_len);
        out += '\t';
        out += std::to_string(key.source_len);
        out += '\t';
        append_double(out, table[j][i]);
        out += '\n';
      }
    }
  }
  return out;
}

AlignmentModel AlignmentModel::deserialize(std::string_view text) {
  AlignmentModel model;
  enum class Section { None, T, Q } section = Section::None;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line == "T") { section = Section::T; continue; }
    if (line == "Q") { section = Section::Q; continue; }
    auto fields = split_tabs(line);
    if (section == Section::T && fields.size() == 3) {
      model.t[std::string(fields[1])][std::string(fields[0])] =
          parse_double(fields[2]);
    } else if (section == Section::Q && fields.size() == 5) {
      int i = static_cast<int>(parse_long(fields[0]));
      int j = static_cast<int>(parse_long(fields[1]));
      int l = static_cast<int>(parse_long(fields[2]));
      int m = static_cast<int>(parse_long(fields[3]));
      auto& table = model.q[{l, m}];
      if (table.empty()) table.assign(m, std::vector<double>(l + 1, 0.0));
      table.at(j).at(i) = parse_double(fields[4]);
    } else {
      throw Error(ErrorKind::MalformedLine,
                  "model file line " + std::to_string(line_no) +
                      ": unexpected content");
    }
  }
  return model;
}

}  // namespace typoline
