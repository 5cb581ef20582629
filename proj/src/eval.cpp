#include "clausecut/eval.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "clausecut/errors.h"
#include "clausecut/tagset.h"
#include "clausecut/text_io.h"

namespace clausecut {

namespace {

double rate(int num, int den) { return den == 0 ? 1.0 : static_cast<double>(num) / den; }

std::string percent(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%6.2f%%", 100.0 * r);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string index_list(const std::vector<int>& v) {
  std::vector<std::string> parts;
  for (int i : v) parts.push_back(std::to_string(i));
  return join(parts, ",");
}

}  // namespace

double EvalReport::governor_accuracy() const { return rate(governor_correct, governor_total); }
double EvalReport::pos_accuracy() const { return rate(pos_correct, words); }
double EvalReport::comma_accuracy() const { return rate(comma_correct, comma_total); }
double EvalReport::conjunction_accuracy() const { return rate(conjunction_correct, conjunction_total); }
double EvalReport::np_exact_match() const { return rate(np_matched, np_gold); }

EvalReport evaluate(std::span<const AnnotatedSentence> gold, std::span<const AnnotatedSentence> predicted) {
  if (gold.size() != predicted.size())
    throw InputError("corpora differ in length: " + std::to_string(gold.size()) + " gold vs " +
                     std::to_string(predicted.size()) + " predicted sentences");
  EvalReport report;
  for (size_t s = 0; s < gold.size(); ++s) {
    const auto& g = gold[s];
    const auto& p = predicted[s];
    const std::string where = "sentence " + std::to_string(s + 1);
    if (g.size() != p.size())
      throw InputError(where + ": " + std::to_string(g.size()) + " gold vs " + std::to_string(p.size()) +
                       " predicted tokens");
    SentenceErrors errors{static_cast<int>(s), {}, {}, {}};
    for (int i = 0; i < g.size(); ++i) {
      if (g.tokens[i].form != p.tokens[i].form)
        throw InputError(where + ", token " + std::to_string(i) + ": \"" + g.tokens[i].form + "\" vs \"" +
                         p.tokens[i].form + "\"");
      ++report.words;
      if (g.tokens[i].pos == p.tokens[i].pos) ++report.pos_correct;
      else errors.pos_errors.push_back(i);
      if (g.governors[i] != kNoGovernor) {
        ++report.governor_total;
        if (g.governors[i] == p.governors[i]) ++report.governor_correct;
        else errors.governor_errors.push_back(i);
      }
      const bool comma = g.tokens[i].pos == kCommaTag;
      const bool conjunction = g.tokens[i].pos == kConjunctionTag;
      if (comma || conjunction) {
        bool ok = g.roles[i] == p.roles[i];
        (comma ? report.comma_total : report.conjunction_total)++;
        if (ok) (comma ? report.comma_correct : report.conjunction_correct)++;
        else errors.role_errors.push_back(i);
      }
    }
    if (g.has_chunks()) {
      auto gold_spans = g.np_spans();
      std::vector<NPSpan> predicted_spans = p.has_chunks() ? p.np_spans() : std::vector<NPSpan>{};
      std::set<NPSpan> lookup(predicted_spans.begin(), predicted_spans.end());
      report.np_gold += static_cast<int>(gold_spans.size());
      report.np_predicted += static_cast<int>(predicted_spans.size());
      for (const auto& span : gold_spans) report.np_matched += static_cast<int>(lookup.count(span));
    }
    if (!errors.empty()) report.errors.push_back(std::move(errors));
  }
  report.sentences = static_cast<int>(gold.size());
  return report;
}

double error_reduction(double before, double after) {
  if (before >= 1.0) throw std::invalid_argument("error_reduction: baseline accuracy must be below 1");
  return (after - before) / (1.0 - before);
}

std::vector<CandidateCount> candidate_counts(std::span<const Token> sentence, const SegmentedSentence& seg) {
  const int n = static_cast<int>(sentence.size());
  auto is_word = [&](int t) { return seg.segment_of(t) >= 0 && !is_punctuation_tag(sentence[t].pos); };
  int sentence_words = 0;
  for (int t = 0; t < n; ++t) sentence_words += is_word(t);

  std::vector<CandidateCount> out;
  for (const auto& span : seg.segments) {
    int segment_words = 0;
    for (int t = span.begin; t < span.end; ++t) segment_words += is_word(t);
    for (int t = span.begin; t < span.end; ++t) {
      int self = is_word(t) ? 1 : 0;
      out.push_back({t, n, span.size(), sentence_words - self, segment_words - self});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.token < b.token; });
  return out;
}

CandidateStats candidate_reduction_stats(std::span<const AnnotatedSentence> corpus,
                                         std::span<const std::vector<LinkWordRole>> roles) {
  if (roles.size() != corpus.size()) throw std::invalid_argument("one role list per sentence required");
  CandidateStats stats;
  long long sr = 0, gr = 0, sw = 0, gw = 0;
  for (size_t s = 0; s < corpus.size(); ++s) {
    auto seg = segment(corpus[s].tokens, roles[s]);
    bool multi = seg.non_empty_count() > 1;
    for (const auto& c : candidate_counts(corpus[s].tokens, seg)) {
      ++stats.words;
      if (multi) ++stats.multi_segment_words;
      sr += c.sentence_raw;
      gr += c.segment_raw;
      sw += c.sentence_words;
      gw += c.segment_words;
    }
  }
  if (stats.words > 0) {
    stats.mean_sentence_raw = static_cast<double>(sr) / stats.words;
    stats.mean_segment_raw = static_cast<double>(gr) / stats.words;
    stats.mean_sentence_words = static_cast<double>(sw) / stats.words;
    stats.mean_segment_words = static_cast<double>(gw) / stats.words;
  }
  return stats;
}

std::string format_report(const EvalReport& r) {
  std::string out;
  auto row = [&](const std::string& name, int num, int den, double value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-24s %8d / %-8d %s\n", name.c_str(), num, den, percent(value).c_str());
    out += buf;
  };
  row("governor accuracy", r.governor_correct, r.governor_total, r.governor_accuracy());
  row("pos accuracy", r.pos_correct, r.words, r.pos_accuracy());
  row("comma roles", r.comma_correct, r.comma_total, r.comma_accuracy());
  row("conjunction roles", r.conjunction_correct, r.conjunction_total, r.conjunction_accuracy());
  row("np exact match", r.np_matched, r.np_gold, r.np_exact_match());
  if (r.mean_candidates_sentence && r.mean_candidates_segment) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-24s %s -> %s\n", "mean candidates", fixed(*r.mean_candidates_sentence).c_str(),
                  fixed(*r.mean_candidates_segment).c_str());
    out += buf;
  }
  for (const auto& e : r.errors) {
    out += "sentence " + std::to_string(e.sentence + 1) + ":";
    if (!e.governor_errors.empty()) out += " governor=" + index_list(e.governor_errors);
    if (!e.pos_errors.empty()) out += " pos=" + index_list(e.pos_errors);
    if (!e.role_errors.empty()) out += " role=" + index_list(e.role_errors);
    out += "\n";
  }
  out += "\n";
  out += "sentences=" + std::to_string(r.sentences) + "\n";
  out += "words=" + std::to_string(r.words) + "\n";
  out += "governor_accuracy=" + fixed(r.governor_accuracy()) + "\n";
  out += "pos_accuracy=" + fixed(r.pos_accuracy()) + "\n";
  out += "comma_accuracy=" + fixed(r.comma_accuracy()) + "\n";
  out += "conjunction_accuracy=" + fixed(r.conjunction_accuracy()) + "\n";
  out += "np_exact_match=" + fixed(r.np_exact_match()) + "\n";
  out += "np_gold=" + std::to_string(r.np_gold) + "\n";
  out += "np_predicted=" + std::to_string(r.np_predicted) + "\n";
  if (r.mean_candidates_sentence) out += "mean_candidates_sentence=" + fixed(*r.mean_candidates_sentence) + "\n";
  if (r.mean_candidates_segment) out += "mean_candidates_segment=" + fixed(*r.mean_candidates_segment) + "\n";
  out += "sentences_with_errors=" + std::to_string(r.errors.size()) + "\n";
  return out;
}

std::string format_candidate_stats(const CandidateStats& s) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-24s %10s %10s\n", "", "sentence", "segment");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-24s %10s %10s\n", "mean raw candidates", fixed(s.mean_sentence_raw).c_str(),
                fixed(s.mean_segment_raw).c_str());
  out += buf;
  std::snprintf(buf, sizeof buf, "%-24s %10s %10s\n", "mean word candidates", fixed(s.mean_sentence_words).c_str(),
                fixed(s.mean_segment_words).c_str());
  out += buf;
  out += "\nwords=" + std::to_string(s.words) + "\n";
  out += "multi_segment_words=" + std::to_string(s.multi_segment_words) + "\n";
  out += "mean_sentence_raw=" + fixed(s.mean_sentence_raw) + "\n";
  out += "mean_segment_raw=" + fixed(s.mean_segment_raw) + "\n";
  out += "mean_sentence_words=" + fixed(s.mean_sentence_words) + "\n";
  out += "mean_segment_words=" + fixed(s.mean_segment_words) + "\n";
  return out;
}

}  // namespace clausecut
