#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clausecut/corpus.h"
#include "clausecut/segmenter.h"

namespace clausecut {

struct SentenceErrors {
  int sentence = 0;
  std::vector<int> governor_errors;  // token indices
  std::vector<int> pos_errors;
  std::vector<int> role_errors;      // commas and conjunctions only

  bool empty() const { return governor_errors.empty() && pos_errors.empty() && role_errors.empty(); }
};

// Counts over a gold/predicted corpus pair.  A rate with an empty denominator
// is reported as 1.
struct EvalReport {
  int sentences = 0;
  int words = 0;
  int governor_total = 0;  // words with an annotated gold governor
  int governor_correct = 0;
  int pos_correct = 0;
  int comma_total = 0;
  int comma_correct = 0;
  int conjunction_total = 0;
  int conjunction_correct = 0;
  int np_gold = 0;
  int np_predicted = 0;
  int np_matched = 0;
  std::optional<double> mean_candidates_sentence;
  std::optional<double> mean_candidates_segment;
  std::vector<SentenceErrors> errors;  // only sentences with at least one error

  double governor_accuracy() const;
  double pos_accuracy() const;
  double comma_accuracy() const;
  double conjunction_accuracy() const;
  double np_exact_match() const;
};

// Throws InputError naming the sentence when the corpora are not aligned
// sentence by sentence and token by token.
EvalReport evaluate(std::span<const AnnotatedSentence> gold, std::span<const AnnotatedSentence> predicted);

// (after - before) / (1 - before)
double error_reduction(double before, double after);

// Candidate governors of one word.  Raw counts include the root; word counts
// only cover non-punctuation tokens that are not link words.
struct CandidateCount {
  int token = 0;
  int sentence_raw = 0;
  int segment_raw = 0;
  int sentence_words = 0;
  int segment_words = 0;
};

// One entry per token that lies inside a segment.
std::vector<CandidateCount> candidate_counts(std::span<const Token> sentence,
                                             const SegmentedSentence& seg);

struct CandidateStats {
  int words = 0;
  int multi_segment_words = 0;
  double mean_sentence_raw = 0;
  double mean_segment_raw = 0;
  double mean_sentence_words = 0;
  double mean_segment_words = 0;
};

// Aggregated over a corpus, each sentence segmented with `roles[i]`.
CandidateStats candidate_reduction_stats(std::span<const AnnotatedSentence> corpus,
                                         std::span<const std::vector<LinkWordRole>> roles);

// Aligned text followed by a key=value block.
std::string format_report(const EvalReport& report);
std::string format_candidate_stats(const CandidateStats& stats);

}  // namespace clausecut
