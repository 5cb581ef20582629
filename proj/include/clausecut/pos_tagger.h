#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "clausecut/corpus.h"

namespace clausecut {

// Bigram HMM part-of-speech tagger with add-k smoothing.
//
// Tags are the ones seen in training, kept sorted so that decoding ties go to
// the lexicographically smallest tag sequence.  Words never seen in training
// emit uniformly over the open-class tags the model knows and never over a
// closed-class tag.
class TaggerModel {
 public:
  static constexpr int kStart = -1;

  const std::vector<std::string>& tags() const { return tags_; }
  int tag_count() const { return static_cast<int>(tags_.size()); }
  double add_k() const { return add_k_; }
  bool known(const std::string& word) const { return vocabulary_.count(word) > 0; }
  const std::vector<int>& open_class() const { return open_class_; }

  // P(tag | prev); prev may be kStart.
  double transition_prob(int prev, int tag) const;
  // P(word | tag), with the unknown-word rule applied.
  double emission_prob(int tag, const std::string& word) const;

  void save(std::ostream& out) const;
  static TaggerModel load(std::istream& in, const std::string& source = "<stream>");

  bool operator==(const TaggerModel&) const = default;

 private:
  friend TaggerModel train_tagger(std::span<const AnnotatedSentence>, double);

  std::vector<std::string> tags_;
  double add_k_ = 0.1;
  std::vector<int> open_class_;
  // (tags + 1) rows; row 0 is the start state.
  std::vector<std::vector<double>> transition_;
  // word -> per-tag emission probability
  std::map<std::string, std::vector<double>> vocabulary_;
};

// The open-class tags used for unknown words.
const std::vector<std::string>& open_class_tags();

TaggerModel train_tagger(std::span<const AnnotatedSentence> corpus, double add_k = 0.1);

// Viterbi decoding; words must be non-empty.
std::vector<std::string> tag(const TaggerModel& model, std::span<const std::string> words);

// Log probability of a tag-id path (start transition included).
double tag_path_log_score(const TaggerModel& model, std::span<const std::string> words,
                          std::span<const int> tag_ids);

}  // namespace clausecut
