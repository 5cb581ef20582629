#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "clausecut/corpus.h"
#include "clausecut/lexicon.h"

namespace clausecut {

class RecordReader;

// Input layout of a role classifier: window_size neighbouring tokens
// (half before, half after the link word), one one-hot block of
// |tagset| inputs per neighbour.
struct WindowLayout {
  int window_size = 8;
  std::vector<std::string> tagset;

  int width() const { return window_size * static_cast<int>(tagset.size()); }
  bool operator==(const WindowLayout&) const = default;
};

// Layout over the frozen Penn tagset.
WindowLayout penn_layout(int window_size);

struct WindowFeatures {
  int window_size = 0;
  int tagset_size = 0;
  std::vector<std::uint8_t> bits;  // window_size blocks of tagset_size

  int set_bits() const;
  bool operator==(const WindowFeatures&) const = default;
};

// Blocks are ordered left to right: position-w/2 ... position-1, then
// position+1 ... position+w/2.  Positions outside the sentence give all-zero
// blocks.  Throws InputError for odd or non-positive window sizes.
WindowFeatures extract_window_features(std::span<const Token> sentence, int position,
                                       int window_size);

struct ClassifierHyperparams {
  int hidden_units = 16;
  double learning_rate = 0.2;
  int epochs = 300;
  std::uint64_t seed = 1997;

  bool operator==(const ClassifierHyperparams&) const = default;
};

struct TrainingExample {
  WindowFeatures features;
  LinkWordRole role;
};

// Single-hidden-layer network with logistic units and one output per role.
class RoleClassifier {
 public:
  const WindowLayout& layout() const { return layout_; }
  const std::vector<LinkWordRole>& outputs() const { return outputs_; }
  const ClassifierHyperparams& hyperparams() const { return hyperparams_; }
  // Mean per-example loss after each training epoch (not persisted).
  const std::vector<double>& loss_history() const { return loss_history_; }

  std::vector<double> activations(const WindowFeatures& features) const;
  // Highest-activation role; ties go to the role listed first.
  LinkWordRole predict(const WindowFeatures& features) const;

  void save(std::ostream& out, const std::string& name) const;
  static RoleClassifier load(RecordReader& reader, const std::string& name);

  // Compares layout, outputs, hyperparameters and every weight exactly.
  bool operator==(const RoleClassifier& other) const;

 private:
  friend RoleClassifier train_classifier(std::span<const TrainingExample>,
                                         std::vector<LinkWordRole>, WindowLayout,
                                         ClassifierHyperparams);
  void check_input(const WindowFeatures& features) const;

  WindowLayout layout_;
  std::vector<LinkWordRole> outputs_;
  ClassifierHyperparams hyperparams_;
  std::vector<std::vector<double>> hidden_weights_;  // hidden x input
  std::vector<double> hidden_bias_;
  std::vector<std::vector<double>> output_weights_;  // output x hidden
  std::vector<double> output_bias_;
  std::vector<double> loss_history_;
};

// Stochastic gradient descent on cross-entropy, deterministic for a given
// seed and example order.  `outputs` is sorted into role order.  Throws
// InputError when a role has no example, when an example's role is not an
// output, or when an example does not match the layout.
RoleClassifier train_classifier(std::span<const TrainingExample> examples,
                                std::vector<LinkWordRole> outputs, WindowLayout layout,
                                ClassifierHyperparams hyperparams);

// Argmax over the comma roles of the model.  Throws InputError when the token
// is not a comma.
LinkWordRole classify_comma(const RoleClassifier& model, std::span<const Token> sentence,
                            int position);
// Argmax over the conjunction roles.  Throws InputError for non-CC tokens.
LinkWordRole classify_conjunction(const RoleClassifier& model, std::span<const Token> sentence,
                                  int position);

// Gold-labelled training examples read from the ROLE column.
std::vector<TrainingExample> comma_examples(std::span<const AnnotatedSentence> corpus,
                                            int window_size);
std::vector<TrainingExample> conjunction_examples(std::span<const AnnotatedSentence> corpus,
                                                  int window_size);

// Comma and conjunction classifiers plus the preposition lexicon.
struct Disambiguator {
  RoleClassifier commas;
  RoleClassifier conjunctions;
  PrepositionLexicon lexicon;

  // One role per token: commas, CC and IN tokens get their classified role,
  // every other token NotLinkWord.
  std::vector<LinkWordRole> disambiguate(std::span<const Token> sentence) const;

  void save(std::ostream& out) const;
  static Disambiguator load(std::istream& in, const std::string& source = "<stream>");
  bool operator==(const Disambiguator&) const = default;
};

Disambiguator train_disambiguator(std::span<const AnnotatedSentence> corpus,
                                  int window_size = 8, ClassifierHyperparams hyperparams = {},
                                  PrepositionLexicon lexicon = PrepositionLexicon::defaults());

}  // namespace clausecut
