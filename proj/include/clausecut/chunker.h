#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "clausecut/corpus.h"
#include "clausecut/lexicon.h"

namespace clausecut {

// First-order HMM over BIO states emitting POS tags, add-k smoothed.
//
// Transitions O->I and <s>->I are structurally zero, so every decoded
// sequence is well formed.  Smoothing mass only goes to states that occur in
// the training data: a corpus without noun phrases yields a model that never
// opens one.
class ChunkerModel {
 public:
  static constexpr int kStates = 3;  // B, I, O (sorted by tag name)
  static constexpr int kStart = -1;

  double add_k() const { return add_k_; }
  bool state_seen(Bio state) const { return seen_[static_cast<int>(state)]; }
  double transition_prob(int prev, Bio next) const;
  // P(pos | state); tags outside the Penn tagset have probability 0.
  double emission_prob(Bio state, std::string_view pos) const;

  void save(std::ostream& out) const;
  static ChunkerModel load(std::istream& in, const std::string& source = "<stream>");
  bool operator==(const ChunkerModel&) const = default;

 private:
  friend ChunkerModel train_chunker(std::span<const AnnotatedSentence>, double);

  double add_k_ = 0.1;
  std::array<bool, kStates> seen_{};
  std::array<std::array<double, kStates>, kStates + 1> transition_{};  // row 0: start
  std::array<std::vector<double>, kStates> emission_;                  // over penn_tags()
};

// Throws InputError for an empty corpus, a sentence without a BIO column, or
// an I-NP that does not follow B-NP/I-NP (the message names the sentence).
ChunkerModel train_chunker(std::span<const AnnotatedSentence> corpus, double add_k = 0.1);

std::vector<Bio> decode_bio(const ChunkerModel& model, std::span<const Token> sentence);
double bio_path_log_score(const ChunkerModel& model, std::span<const Token> sentence,
                          std::span<const Bio> path);
// Base NP spans from the Viterbi BIO sequence, in token order.
std::vector<NPSpan> bracket(const ChunkerModel& model, std::span<const Token> sentence);

// Noun phrases joined by connectives into one group.  connectives[i] is the
// token between spans[i] and spans[i + 1].
struct NPGroup {
  std::vector<NPSpan> spans;
  std::vector<int> connectives;

  int begin() const { return spans.front().start; }
  int end() const { return spans.back().end; }  // inclusive
  bool singleton() const { return spans.size() == 1; }
  bool operator==(const NPGroup&) const = default;
};

// Maximal runs NP c NP c ... where each connective c sits directly between
// two spans and is a logical conjunctive comma, a logical conjunction or a
// group-forming preposition ("of").  Unjoined NPs become singleton groups.
std::vector<NPGroup> group_nps(std::span<const Token> sentence, std::span<const NPSpan> spans,
                               std::span<const LinkWordRole> roles,
                               const PrepositionLexicon& lexicon);

struct Placeholder {
  NPGroup group;
  std::vector<Token> tokens;  // the replaced tokens, original indices
};

// A segment with every NP group replaced by one "NP#k" token tagged NN.
struct NPExtraction {
  std::vector<Token> compressed;             // indexed 0.. within the compressed list
  std::vector<int> source;                   // original index, or -1 for placeholders
  std::map<int, Placeholder> placeholders;   // compressed index -> group

  std::vector<Token> expand() const;
};

// `segment` holds tokens with their original sentence indices; groups not
// lying entirely inside the segment are ignored.
NPExtraction extract_nps(std::span<const Token> segment, std::span<const NPGroup> groups);

// Text with "[NP ... ]" around every span.
std::string format_brackets(std::span<const Token> sentence, std::span<const NPSpan> spans);

}  // namespace clausecut
