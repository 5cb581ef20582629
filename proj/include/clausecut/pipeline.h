#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clausecut/chunker.h"
#include "clausecut/corpus.h"
#include "clausecut/disambiguator.h"
#include "clausecut/parser.h"
#include "clausecut/pos_tagger.h"
#include "clausecut/segmenter.h"
#include "clausecut/synthesizer.h"

namespace clausecut {

// Whitespace split, with , . ; : ! ? ( ) and " split off as separate tokens.
std::vector<std::string> tokenize(std::string_view text);

struct ModelBundle {
  std::optional<TaggerModel> tagger;
  Disambiguator roles;
  ChunkerModel chunker;
  ParserModel np_parser;
  ParserModel segment_parser;
  std::optional<ParserModel> baseline;

  // tagger.model, roles.model, chunker.model, parser-np.model,
  // parser-segment.model and parser-baseline.model; the tagger and baseline
  // files are optional.
  void save_dir(const std::filesystem::path& dir) const;
  static ModelBundle load_dir(const std::filesystem::path& dir);
};

struct TrainOptions {
  bool train_tagger = true;
  bool train_baseline = true;
  int window_size = 8;
  ClassifierHyperparams hyperparams;
  PrepositionLexicon lexicon = PrepositionLexicon::defaults();
  double add_k = 0.1;
};

ModelBundle train_bundle(std::span<const AnnotatedSentence> corpus, const TrainOptions& options = {});

// One tree per gold NP span: in-span governors kept, the rest attached to the
// root.  Spans whose result is not a proper tree are skipped.
std::vector<DependencyTree> derive_np_trees(std::span<const AnnotatedSentence> corpus);

// Gold trees projected onto NP-compressed segments (gold roles and BIO).  A
// placeholder inherits the governor of its group's head; governors outside the
// segment become the root.  Improper projections are skipped.
std::vector<DependencyTree> derive_segment_trees(std::span<const AnnotatedSentence> corpus,
                                                 const PrepositionLexicon& lexicon);

// Whole gold trees, for the single-pass baseline.
std::vector<DependencyTree> whole_sentence_trees(std::span<const AnnotatedSentence> corpus);

struct ParseOptions {
  bool repair = true;
  bool trace = false;
  SynthesisConfig synthesis;
};

struct ParseResult {
  // Input tokens with predicted governors, roles and BIO chunks.
  AnnotatedSentence sentence;
  DependencyTree tree;
  ValidityReport validity;
  SegmentedSentence segmentation;
  std::vector<std::string> trace;
};

// Tags the sentence when POS tags are missing (empty), then disambiguates,
// segments, brackets, parses segments and NPs, and synthesizes.  Failures are
// reported as StageError naming the stage.
ParseResult parse_dc(const ModelBundle& models, std::vector<Token> tokens,
                     const ParseOptions& options = {});

// Single pass over the whole sentence with the baseline parser.
ParseResult parse_baseline(const ModelBundle& models, std::vector<Token> tokens,
                           const ParseOptions& options = {});

// Fills in missing POS tags with the bundle's tagger.
std::vector<Token> ensure_tagged(const ModelBundle& models, std::vector<Token> tokens);

}  // namespace clausecut
