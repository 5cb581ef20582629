#include "clausecut/pos_tagger.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include "clausecut/errors.h"
#include "clausecut/tagset.h"
#include "clausecut/text_io.h"
#include "clausecut/viterbi.h"

namespace clausecut {

namespace {

constexpr std::string_view kHeader = "clausecut-tagger/1";

double log_or_neg_inf(double p) {
  return p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

}  // namespace

const std::vector<std::string>& open_class_tags() {
  static const std::vector<std::string> kOpen = {"NN", "NNS", "NNP", "VB", "VBD", "VBZ",
                                                 "VBG", "VBN", "JJ", "RB", "CD"};
  return kOpen;
}

double TaggerModel::transition_prob(int prev, int tag) const {
  return transition_.at(prev + 1).at(tag);
}

double TaggerModel::emission_prob(int tag, const std::string& word) const {
  auto it = vocabulary_.find(word);
  if (it != vocabulary_.end()) return it->second.at(tag);
  if (open_class_.empty()) return 1.0 / tag_count();
  bool open = std::find(open_class_.begin(), open_class_.end(), tag) != open_class_.end();
  return open ? 1.0 / static_cast<double>(open_class_.size()) : 0.0;
}

TaggerModel train_tagger(std::span<const AnnotatedSentence> corpus, double add_k) {
  if (corpus.empty()) throw InputError("train_tagger: empty corpus");
  if (add_k < 0) throw InputError("train_tagger: add_k must be non-negative");

  std::set<std::string> tag_set;
  for (const auto& s : corpus) {
    if (s.tokens.empty()) throw InputError("train_tagger: empty sentence");
    for (const auto& t : s.tokens) tag_set.insert(t.pos);
  }

  TaggerModel model;
  model.add_k_ = add_k;
  model.tags_.assign(tag_set.begin(), tag_set.end());
  const int n_tags = model.tag_count();
  auto id_of = [&](const std::string& tag) {
    return static_cast<int>(std::lower_bound(model.tags_.begin(), model.tags_.end(), tag) -
                            model.tags_.begin());
  };
  for (const auto& open : open_class_tags())
    if (tag_set.count(open)) model.open_class_.push_back(id_of(open));
  std::sort(model.open_class_.begin(), model.open_class_.end());

  std::vector<std::vector<double>> transitions(n_tags + 1, std::vector<double>(n_tags, 0.0));
  std::map<std::string, std::vector<double>> emissions;
  std::vector<double> tag_totals(n_tags, 0.0);
  for (const auto& s : corpus) {
    int prev = TaggerModel::kStart;
    for (const auto& t : s.tokens) {
      int id = id_of(t.pos);
      transitions[prev + 1][id] += 1;
      auto& row = emissions[t.form];
      if (row.empty()) row.assign(n_tags, 0.0);
      row[id] += 1;
      tag_totals[id] += 1;
      prev = id;
    }
  }

  for (auto& row : transitions) {
    double total = 0;
    for (double c : row) total += c;
    double denominator = total + add_k * n_tags;
    for (double& c : row) c = denominator > 0 ? (c + add_k) / denominator : 1.0 / n_tags;
  }
  model.transition_ = std::move(transitions);

  const double vocab = static_cast<double>(emissions.size());
  for (auto& [word, row] : emissions)
    for (int t = 0; t < n_tags; ++t) row[t] = (row[t] + add_k) / (tag_totals[t] + add_k * vocab);
  model.vocabulary_ = std::move(emissions);
  return model;
}

std::vector<std::string> tag(const TaggerModel& model, std::span<const std::string> words) {
  if (words.empty()) throw InputError("tag: empty sentence");
  const int n_tags = model.tag_count();
  // Emission log-probabilities are looked up once per position.
  std::vector<std::vector<double>> emit(words.size(), std::vector<double>(n_tags));
  for (size_t t = 0; t < words.size(); ++t)
    for (int s = 0; s < n_tags; ++s) emit[t][s] = log_or_neg_inf(model.emission_prob(s, words[t]));
  std::vector<std::vector<double>> trans(n_tags + 1, std::vector<double>(n_tags));
  for (int p = -1; p < n_tags; ++p)
    for (int s = 0; s < n_tags; ++s) trans[p + 1][s] = log_or_neg_inf(model.transition_prob(p, s));

  auto decoded = viterbi(
      n_tags, static_cast<int>(words.size()), [&](int s) { return trans[0][s]; },
      [&](int p, int s) { return trans[p + 1][s]; }, [&](int t, int s) { return emit[t][s]; });
  std::vector<std::string> out;
  out.reserve(words.size());
  for (int s : decoded.states) out.push_back(model.tags()[s]);
  return out;
}

double tag_path_log_score(const TaggerModel& model, std::span<const std::string> words,
                          std::span<const int> tag_ids) {
  double score = 0;
  int prev = TaggerModel::kStart;
  for (size_t t = 0; t < words.size(); ++t) {
    score += log_or_neg_inf(model.transition_prob(prev, tag_ids[t]));
    score += log_or_neg_inf(model.emission_prob(tag_ids[t], words[t]));
    prev = tag_ids[t];
  }
  return score;
}

void TaggerModel::save(std::ostream& out) const {
  auto row_text = [](const std::vector<double>& row) {
    std::string s;
    for (double v : row) s += '\t' + format_double(v);
    return s;
  };
  out << kHeader << '\n';
  out << "add_k\t" << format_double(add_k_) << '\n';
  out << "tags\t" << tags_.size();
  for (const auto& t : tags_) out << '\t' << t;
  out << '\n';
  out << "open_class\t" << open_class_.size();
  for (int id : open_class_) out << '\t' << tags_[id];
  out << '\n';
  out << "transition\t<s>" << row_text(transition_[0]) << '\n';
  for (size_t t = 0; t < tags_.size(); ++t)
    out << "transition\t" << tags_[t] << row_text(transition_[t + 1]) << '\n';
  out << "vocabulary\t" << vocabulary_.size() << '\n';
  for (const auto& [word, row] : vocabulary_) out << "emission\t" << word << row_text(row) << '\n';
  out << "end\n";
}

TaggerModel TaggerModel::load(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.expect_header(kHeader);
  TaggerModel model;
  model.add_k_ = reader.number(reader.expect("add_k", 1)[0]);

  auto tag_fields = reader.expect("tags", -1);
  auto n_tags = reader.integer(tag_fields[0]);
  if (n_tags <= 0 || static_cast<size_t>(n_tags) + 1 != tag_fields.size())
    reader.fail("tag count does not match the tag list");
  model.tags_.assign(tag_fields.begin() + 1, tag_fields.end());
  if (!std::is_sorted(model.tags_.begin(), model.tags_.end()))
    reader.fail("tag list must be sorted");
  for (const auto& t : model.tags_)
    if (!is_penn_tag(t)) reader.fail("unknown POS tag '" + t + "'");

  auto open_fields = reader.expect("open_class", -1);
  if (static_cast<size_t>(reader.integer(open_fields[0])) + 1 != open_fields.size())
    reader.fail("open-class count does not match the list");
  for (size_t i = 1; i < open_fields.size(); ++i) {
    auto it = std::find(model.tags_.begin(), model.tags_.end(), open_fields[i]);
    if (it == model.tags_.end()) reader.fail("open-class tag '" + open_fields[i] + "' not in model");
    model.open_class_.push_back(static_cast<int>(it - model.tags_.begin()));
  }

  auto read_row = [&](const std::vector<std::string>& fields) {
    std::vector<double> row;
    for (size_t i = 1; i < fields.size(); ++i) row.push_back(reader.number(fields[i]));
    return row;
  };
  for (int t = -1; t < n_tags; ++t) {
    auto fields = reader.expect("transition", static_cast<int>(n_tags) + 1);
    std::string expected = t < 0 ? "<s>" : model.tags_[t];
    if (fields[0] != expected) reader.fail("expected transition row for '" + expected + "'");
    model.transition_.push_back(read_row(fields));
  }
  auto vocab = reader.integer(reader.expect("vocabulary", 1)[0]);
  for (long long w = 0; w < vocab; ++w) {
    auto fields = reader.expect("emission", static_cast<int>(n_tags) + 1);
    model.vocabulary_[fields[0]] = read_row(fields);
  }
  reader.expect("end", 0);
  return model;
}

}  // namespace clausecut
