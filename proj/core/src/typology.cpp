#include "typoline/typology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace typoline {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void append_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::MalformedLine, "bad number '" + std::string(s) + "'");
  return v;
}

size_t parse_count(std::string_view s) {
  size_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::MalformedLine, "bad count '" + std::string(s) + "'");
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

double class_log_joint(const GnbClass& c, double value) {
  double diff = value - c.mean;
  return std::log(c.prior) - 0.5 * std::log(kTwoPi * c.variance) -
         diff * diff / (2.0 * c.variance);
}

}  // namespace

std::optional<WordOrderLabel> parse_word_order(std::string_view s) {
  if (s == "SV") return WordOrderLabel::SV;
  if (s == "VS") return WordOrderLabel::VS;
  if (s == "FREE") return WordOrderLabel::FREE;
  if (s == "UNK") return WordOrderLabel::UNK;
  return std::nullopt;
}

std::string_view to_string(WordOrderLabel label) {
  switch (label) {
    case WordOrderLabel::SV: return "SV";
    case WordOrderLabel::VS: return "VS";
    case WordOrderLabel::FREE: return "FREE";
    case WordOrderLabel::UNK: return "UNK";
  }
  return "UNK";
}

std::optional<N1Feature> parse_feature(std::string_view s) {
  if (s == "raw") return N1Feature::Raw;
  if (s == "smoothed") return N1Feature::Smoothed;
  if (s == "log-smoothed") return N1Feature::LogSmoothed;
  return std::nullopt;
}

std::string_view to_string(N1Feature f) {
  switch (f) {
    case N1Feature::Raw: return "raw";
    case N1Feature::Smoothed: return "smoothed";
    case N1Feature::LogSmoothed: return "log-smoothed";
  }
  return "smoothed";
}

std::optional<double> feature_value(const N1Profile& p, N1Feature f) {
  switch (f) {
    case N1Feature::Raw: return p.raw_ratio();
    case N1Feature::Smoothed: return p.smoothed_ratio();
    case N1Feature::LogSmoothed: return std::log(p.smoothed_ratio());
  }
  return std::nullopt;
}

VerseOrder verse_order(const TaggedVerse& v, const std::set<PosTag>& arg_tags,
                       const std::set<PosTag>& pred_tags) {
  bool has_arg = false, has_pred = false;
  for (const auto& e : v.entries) {
    has_arg = has_arg || arg_tags.count(e.tag);
    has_pred = has_pred || pred_tags.count(e.tag);
  }
  if (!has_arg || !has_pred) return VerseOrder::Neither;
  for (const auto& e : v.entries) {
    if (arg_tags.count(e.tag)) return VerseOrder::NounFirst;
    if (pred_tags.count(e.tag)) return VerseOrder::VerbFirst;
  }
  return VerseOrder::Neither;  // unreachable
}

N1Profile n1_profile(const TaggedCorpus& c, const std::set<PosTag>& arg_tags,
                     const std::set<PosTag>& pred_tags) {
  N1Profile p;
  p.language = c.language;
  for (const auto& [id, verse] : c.verses) {
    switch (verse_order(verse, arg_tags, pred_tags)) {
      case VerseOrder::NounFirst: ++p.noun_first; break;
      case VerseOrder::VerbFirst: ++p.verb_first; break;
      case VerseOrder::Neither: break;
    }
  }
  p.considered = p.noun_first + p.verb_first;
  return p;
}

GnbModel gnb_train(
    const std::vector<std::pair<double, WordOrderLabel>>& samples) {
  if (samples.empty())
    throw Error(ErrorKind::EmptyTraining, "no samples to train on");

  std::map<WordOrderLabel, std::vector<double>> by_class;
  for (const auto& [value, label] : samples) {
    if (label == WordOrderLabel::UNK)
      throw std::invalid_argument("UNK is not a trainable class");
    by_class[label].push_back(value);
  }
  if (by_class.size() < 2)
    throw Error(ErrorKind::SingleClass,
                "need at least two classes, got " +
                    std::to_string(by_class.size()));

  double pooled_mean = 0;
  for (const auto& [value, label] : samples) pooled_mean += value;
  pooled_mean /= static_cast<double>(samples.size());
  double pooled_var = 0;
  for (const auto& [value, label] : samples) {
    double d = value - pooled_mean;
    pooled_var += d * d;
  }
  pooled_var /= static_cast<double>(samples.size());

  GnbModel model;
  model.epsilon = std::max(1e-9 * pooled_var, 1e-12);
  for (const auto& [label, values] : by_class) {
    GnbClass c;
    c.label = label;
    c.prior = static_cast<double>(values.size()) /
              static_cast<double>(samples.size());
    for (double v : values) c.mean += v;
    c.mean /= static_cast<double>(values.size());
    double var = 0;
    for (double v : values) {
      double d = v - c.mean;
      var += d * d;
    }
    c.variance = var / static_cast<double>(values.size()) + model.epsilon;
    model.classes.push_back(c);
  }
  std::sort(model.classes.begin(), model.classes.end(),
            [](const GnbClass& a, const GnbClass& b) {
              return to_string(a.label) < to_string(b.label);
            });
  return model;
}

GnbPrediction gnb_predict(const GnbModel& m, double value) {
  GnbPrediction out;
  double best = -std::numeric_limits<double>::infinity();
  std::map<WordOrderLabel, double> log_joint;
  for (const auto& c : m.classes) {
    double lj = class_log_joint(c, value);
    log_joint[c.label] = lj;
    // Classes are sorted by name, so strict > yields the earliest name on ties.
    if (lj > best) {
      best = lj;
      out.label = c.label;
    }
  }
  double denom = 0;
  for (const auto& [label, lj] : log_joint) denom += std::exp(lj - best);
  for (const auto& [label, lj] : log_joint)
    out.posteriors[label] = std::exp(lj - best) / denom;
  return out;
}

std::string GnbModel::serialize() const {
  std::string out = "# GNB v1 epsilon=";
  append_double(out, epsilon);
  out += '\n';
  for (const auto& c : classes) {
    out += to_string(c.label);
    out += '\t';
    append_double(out, c.prior);
    out += '\t';
    append_double(out, c.mean);
    out += '\t';
    append_double(out, c.variance);
    out += '\n';
  }
  return out;
}

GnbModel GnbModel::deserialize(std::string_view text) {
  GnbModel model;
  size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (line[0] == '#') {
      constexpr std::string_view kPrefix = "# GNB v1 epsilon=";
      if (line.substr(0, kPrefix.size()) != kPrefix)
        throw Error(ErrorKind::MalformedLine, "bad GNB model header");
      model.epsilon = parse_double(line.substr(kPrefix.size()));
      saw_header = true;
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw Error(ErrorKind::MalformedLine, "bad GNB model row");
    auto label = parse_word_order(fields[0]);
    if (!label || *label == WordOrderLabel::UNK)
      throw Error(ErrorKind::MalformedLine,
                  "bad GNB class label '" + std::string(fields[0]) + "'");
    GnbClass c;
    c.label = *label;
    c.prior = parse_double(fields[1]);
    c.mean = parse_double(fields[2]);
    c.variance = parse_double(fields[3]);
    model.classes.push_back(c);
  }
  if (!saw_header)
    throw Error(ErrorKind::MalformedLine, "missing GNB model header");
  return model;
}

std::string profile_tsv_row(const N1Profile& p) {
  std::string out = p.language;
  out += '\t';
  out += std::to_string(p.noun_first);
  out += '\t';
  out += std::to_string(p.verb_first);
  out += '\t';
  out += std::to_string(p.considered);
  out += '\t';
  if (auto raw = p.raw_ratio())
    append_double(out, *raw);
  else
    out += "NA";
  out += '\t';
  append_double(out, p.smoothed_ratio());
  return out;
}

N1Profile parse_profile_tsv_row(std::string_view line) {
  auto fields = split_tabs(line);
  if (fields.size() != 6)
    throw Error(ErrorKind::MalformedLine,
                "profile row needs 6 fields, got " +
                    std::to_string(fields.size()));
  N1Profile p;
  p.language = std::string(fields[0]);
  p.noun_first = parse_count(fields[1]);
  p.verb_first = parse_count(fields[2]);
  p.considered = parse_count(fields[3]);
  return p;
}

}  // namespace typoline
