#include "clausecut/chunker.h"

#include <cmath>
#include <istream>
#include <ostream>

#include "clausecut/errors.h"
#include "clausecut/tagset.h"
#include "clausecut/text_io.h"
#include "clausecut/viterbi.h"

namespace clausecut {

namespace {

constexpr std::string_view kHeader = "clausecut-chunker/1";
constexpr int kB = 0, kI = 1, kO = 2;

double log_or_neg_inf(double p) {
  return p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

bool structurally_allowed(int prev, int next) {
  return !(next == kI && (prev == ChunkerModel::kStart || prev == kO));
}

}  // namespace

double ChunkerModel::transition_prob(int prev, Bio next) const {
  return transition_.at(prev + 1).at(static_cast<int>(next));
}

double ChunkerModel::emission_prob(Bio state, std::string_view pos) const {
  auto id = tag_id(pos);
  return id ? emission_[static_cast<int>(state)][*id] : 0.0;
}

ChunkerModel train_chunker(std::span<const AnnotatedSentence> corpus, double add_k) {
  if (corpus.empty()) throw InputError("train_chunker: empty corpus");
  if (add_k < 0) throw InputError("train_chunker: add_k must be non-negative");
  const int n_tags = static_cast<int>(penn_tags().size());
  std::array<std::array<double, 3>, 4> trans{};
  std::array<std::vector<double>, 3> emit;
  for (auto& row : emit) row.assign(n_tags, 0.0);
  ChunkerModel model;
  model.add_k_ = add_k;

  for (size_t s = 0; s < corpus.size(); ++s) {
    const auto& sentence = corpus[s];
    if (!sentence.has_chunks())
      throw InputError("train_chunker: sentence " + std::to_string(s) + " has no BIO column");
    int prev = ChunkerModel::kStart;
    for (int i = 0; i < sentence.size(); ++i) {
      int state = static_cast<int>(sentence.chunks[i]);
      if (!structurally_allowed(prev, state))
        throw InputError("train_chunker: sentence " + std::to_string(s) + ", token " +
                         std::to_string(i) + ": I-NP without a preceding B-NP or I-NP");
      trans[prev + 1][state] += 1;
      emit[state][*tag_id(sentence.tokens[i].pos)] += 1;
      model.seen_[state] = true;
      prev = state;
    }
  }

  for (int prev = -1; prev < 3; ++prev) {
    auto& row = trans[prev + 1];
    int allowed = 0;
    double total = 0;
    for (int next = 0; next < 3; ++next) {
      if (model.seen_[next] && structurally_allowed(prev, next)) {
        ++allowed;
        total += row[next];
      }
    }
    for (int next = 0; next < 3; ++next) {
      bool ok = model.seen_[next] && structurally_allowed(prev, next);
      double denominator = total + add_k * allowed;
      double p = 0;
      if (ok) p = denominator > 0 ? (row[next] + add_k) / denominator : 1.0 / allowed;
      model.transition_[prev + 1][next] = p;
    }
  }
  for (int state = 0; state < 3; ++state) {
    double total = 0;
    for (double c : emit[state]) total += c;
    double denominator = total + add_k * n_tags;
    for (double& c : emit[state]) c = denominator > 0 ? (c + add_k) / denominator : 1.0 / n_tags;
    model.emission_[state] = std::move(emit[state]);
  }
  return model;
}

std::vector<Bio> decode_bio(const ChunkerModel& model, std::span<const Token> sentence) {
  const int n = static_cast<int>(sentence.size());
  if (n == 0) return {};
  std::array<std::array<double, 3>, 4> trans;
  for (int p = -1; p < 3; ++p)
    for (int s = 0; s < 3; ++s) trans[p + 1][s] = log_or_neg_inf(model.transition_prob(p, static_cast<Bio>(s)));
  std::vector<std::array<double, 3>> emit(n);
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < 3; ++s) emit[t][s] = log_or_neg_inf(model.emission_prob(static_cast<Bio>(s), sentence[t].pos));
  auto decoded = viterbi(
      3, n, [&](int s) { return trans[0][s]; }, [&](int p, int s) { return trans[p + 1][s]; },
      [&](int t, int s) { return emit[t][s]; });
  std::vector<Bio> out;
  for (int s : decoded.states) out.push_back(static_cast<Bio>(s));
  // With every path at -inf the decoder may return an ill-formed sequence.
  if (!std::isfinite(decoded.log_score)) out.assign(n, Bio::O);
  return out;
}

double bio_path_log_score(const ChunkerModel& model, std::span<const Token> sentence,
                          std::span<const Bio> path) {
  double score = 0;
  int prev = ChunkerModel::kStart;
  for (size_t t = 0; t < sentence.size(); ++t) {
    score += log_or_neg_inf(model.transition_prob(prev, path[t]));
    score += log_or_neg_inf(model.emission_prob(path[t], sentence[t].pos));
    prev = static_cast<int>(path[t]);
  }
  return score;
}

std::vector<NPSpan> bracket(const ChunkerModel& model, std::span<const Token> sentence) {
  auto tags = decode_bio(model, sentence);
  return spans_from_bio(tags);
}

std::vector<NPGroup> group_nps(std::span<const Token> sentence, std::span<const NPSpan> spans,
                               std::span<const LinkWordRole> roles,
                               const PrepositionLexicon& lexicon) {
  auto joins = [&](int c) {
    LinkWordRole role = roles[c];
    if (role == LinkWordRole::LogicalConjunctiveComma || role == LinkWordRole::LogicalConjunction)
      return true;
    return role == LinkWordRole::NonSegmentingPreposition && lexicon.forms_groups(sentence[c].form);
  };
  std::vector<NPGroup> groups;
  for (const auto& span : spans) {
    if (!groups.empty()) {
      auto& last = groups.back();
      int gap = last.end() + 1;
      if (span.start == gap + 1 && joins(gap)) {
        last.connectives.push_back(gap);
        last.spans.push_back(span);
        continue;
      }
    }
    groups.push_back({{span}, {}});
  }
  return groups;
}

NPExtraction extract_nps(std::span<const Token> segment, std::span<const NPGroup> groups) {
  NPExtraction out;
  if (segment.empty()) return out;
  const int first = segment.front().index;
  const int last = segment.back().index;
  std::map<int, const NPGroup*> by_start;
  for (const auto& g : groups)
    if (g.begin() >= first && g.end() <= last) by_start[g.begin()] = &g;

  int placeholder = 0;
  for (size_t i = 0; i < segment.size();) {
    const int position = static_cast<int>(out.compressed.size());
    auto it = by_start.find(segment[i].index);
    if (it == by_start.end()) {
      out.compressed.push_back({position, segment[i].form, segment[i].pos});
      out.source.push_back(segment[i].index);
      ++i;
      continue;
    }
    const NPGroup& group = *it->second;
    Placeholder ph{group, {}};
    while (i < segment.size() && segment[i].index <= group.end()) ph.tokens.push_back(segment[i++]);
    out.compressed.push_back({position, "NP#" + std::to_string(placeholder++), std::string(kPlaceholderTag)});
    out.source.push_back(-1);
    out.placeholders.emplace(position, std::move(ph));
  }
  return out;
}

std::vector<Token> NPExtraction::expand() const {
  std::vector<Token> tokens;
  for (size_t i = 0; i < compressed.size(); ++i) {
    auto it = placeholders.find(static_cast<int>(i));
    if (it == placeholders.end()) {
      Token t = compressed[i];
      t.index = source[i];
      tokens.push_back(std::move(t));
    } else {
      tokens.insert(tokens.end(), it->second.tokens.begin(), it->second.tokens.end());
    }
  }
  return tokens;
}

std::string format_brackets(std::span<const Token> sentence, std::span<const NPSpan> spans) {
  std::string out;
  size_t next = 0;
  for (int i = 0; i < static_cast<int>(sentence.size()); ++i) {
    if (!out.empty()) out += ' ';
    bool opens = next < spans.size() && spans[next].start == i;
    if (opens) out += "[NP ";
    out += sentence[i].form;
    if (next < spans.size() && spans[next].end == i) {
      out += " ]";
      ++next;
    }
  }
  return out;
}

void ChunkerModel::save(std::ostream& out) const {
  static constexpr const char* kNames[] = {"B-NP", "I-NP", "O"};
  out << kHeader << '\n';
  out << "add_k\t" << format_double(add_k_) << '\n';
  out << "seen";
  for (bool s : seen_) out << '\t' << (s ? 1 : 0);
  out << '\n';
  for (int p = -1; p < kStates; ++p) {
    out << "transition\t" << (p < 0 ? "<s>" : kNames[p]);
    for (double v : transition_[p + 1]) out << '\t' << format_double(v);
    out << '\n';
  }
  out << "emission_tags\t" << penn_tags().size();
  for (auto t : penn_tags()) out << '\t' << t;
  out << '\n';
  for (int s = 0; s < kStates; ++s) {
    out << "emission\t" << kNames[s];
    for (double v : emission_[s]) out << '\t' << format_double(v);
    out << '\n';
  }
  out << "end\n";
}

ChunkerModel ChunkerModel::load(std::istream& in, const std::string& source) {
  static constexpr const char* kNames[] = {"B-NP", "I-NP", "O"};
  RecordReader reader(in, source);
  reader.expect_header(kHeader);
  ChunkerModel model;
  model.add_k_ = reader.number(reader.expect("add_k", 1)[0]);
  auto seen = reader.expect("seen", kStates);
  for (int s = 0; s < kStates; ++s) model.seen_[s] = reader.integer(seen[s]) != 0;
  for (int p = -1; p < kStates; ++p) {
    auto fields = reader.expect("transition", kStates + 1);
    if (fields[0] != (p < 0 ? "<s>" : kNames[p])) reader.fail("unexpected transition row '" + fields[0] + "'");
    for (int s = 0; s < kStates; ++s) model.transition_[p + 1][s] = reader.number(fields[s + 1]);
  }
  const int n_tags = static_cast<int>(penn_tags().size());
  auto tags = reader.expect("emission_tags", n_tags + 1);
  for (int t = 0; t < n_tags; ++t)
    if (tags[t + 1] != penn_tags()[t]) reader.fail("emission tag order differs from the Penn tagset");
  for (int s = 0; s < kStates; ++s) {
    auto fields = reader.expect("emission", n_tags + 1);
    if (fields[0] != kNames[s]) reader.fail("unexpected emission row '" + fields[0] + "'");
    for (int t = 0; t < n_tags; ++t) model.emission_[s].push_back(reader.number(fields[t + 1]));
  }
  reader.expect("end", 0);
  return model;
}

}  // namespace clausecut
