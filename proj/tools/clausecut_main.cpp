#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "clausecut/errors.h"
#include "clausecut/eval.h"
#include "clausecut/pipeline.h"

using namespace clausecut;

namespace {

std::vector<AnnotatedSentence> load_corpus(const std::string& path) {
  if (path == "-") return read_corpus(std::cin, "<stdin>");
  return read_corpus(std::filesystem::path(path));
}

// Sentences to process: either one raw text or a corpus file.
std::vector<AnnotatedSentence> load_input(const std::string& path, const std::string& text, bool retag) {
  if (!text.empty()) {
    auto words = tokenize(text);
    if (words.empty()) throw InputError("--text contains no tokens");
    std::vector<Token> tokens;
    for (size_t i = 0; i < words.size(); ++i) tokens.push_back({static_cast<int>(i), words[i], ""});
    return {make_sentence(std::move(tokens))};
  }
  if (path.empty()) throw InputError("either --input or --text is required");
  auto corpus = load_corpus(path);
  if (retag)
    for (auto& s : corpus)
      for (auto& t : s.tokens) t.pos.clear();
  return corpus;
}

template <typename Model>
void write_model(const std::string& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  model.save(out);
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw InputError("cannot write " + path);
    stream = &file;
  }
};

ModelBundle load_models(const std::string& dir) { return ModelBundle::load_dir(dir); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divide-and-conquer dependency parser"};
  app.require_subcommand(1);

  std::string corpus_path, out_path, models_dir, input_path, text, gold_path, pred_path, baseline_path;
  std::string mode = "segment", strategy = "dc", repair = "on";
  double add_k = 0.1;
  int window = 8;
  ClassifierHyperparams hp;
  bool whole = false, trace = false, retag = false, no_tagger = false;

  auto add_training = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", corpus_path, "annotated training corpus")->required();
    cmd->add_option("--add-k", add_k, "smoothing constant");
  };

  auto* tagger_cmd = app.add_subcommand("train-tagger", "train the POS tagger");
  add_training(tagger_cmd);
  tagger_cmd->add_option("--out", out_path)->required();

  auto* roles_cmd = app.add_subcommand("train-roles", "train the link-word disambiguator");
  add_training(roles_cmd);
  roles_cmd->add_option("--out", out_path)->required();
  roles_cmd->add_option("--window", window, "POS window size (even)");
  roles_cmd->add_option("--hidden", hp.hidden_units);
  roles_cmd->add_option("--learning-rate", hp.learning_rate);
  roles_cmd->add_option("--epochs", hp.epochs);
  roles_cmd->add_option("--seed", hp.seed);

  auto* chunker_cmd = app.add_subcommand("train-chunker", "train the NP chunker");
  add_training(chunker_cmd);
  chunker_cmd->add_option("--out", out_path)->required();

  auto* parser_cmd = app.add_subcommand("train-parser", "train a dependency parser model");
  add_training(parser_cmd);
  parser_cmd->add_option("--out", out_path)->required();
  parser_cmd->add_option("--mode", mode)->check(CLI::IsMember({"segment", "np"}));
  parser_cmd->add_flag("--whole-sentences", whole, "train on whole gold trees (baseline)");

  auto* all_cmd = app.add_subcommand("train-all", "train every model into a directory");
  add_training(all_cmd);
  all_cmd->add_option("--out-dir", out_path)->required();
  all_cmd->add_flag("--no-tagger", no_tagger);

  auto* parse_cmd = app.add_subcommand("parse", "parse sentences");
  parse_cmd->add_option("--models", models_dir)->required();
  parse_cmd->add_option("--input", input_path, "corpus file or - for stdin");
  parse_cmd->add_option("--text", text, "raw sentence");
  parse_cmd->add_option("--output", out_path);
  parse_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"dc", "baseline"}));
  parse_cmd->add_option("--repair", repair)->check(CLI::IsMember({"on", "off"}));
  parse_cmd->add_flag("--trace", trace);
  parse_cmd->add_flag("--retag", retag, "ignore input POS tags");

  auto* segment_cmd = app.add_subcommand("segment", "show segmentation");
  segment_cmd->add_option("--models", models_dir)->required();
  segment_cmd->add_option("--input", input_path);
  segment_cmd->add_option("--text", text);
  segment_cmd->add_flag("--retag", retag);

  auto* bracket_cmd = app.add_subcommand("bracket", "show NP brackets");
  bracket_cmd->add_option("--models", models_dir)->required();
  bracket_cmd->add_option("--input", input_path);
  bracket_cmd->add_option("--text", text);
  bracket_cmd->add_flag("--retag", retag);

  auto* eval_cmd = app.add_subcommand("evaluate", "score predictions against gold");
  eval_cmd->add_option("--gold", gold_path)->required();
  eval_cmd->add_option("--pred", pred_path)->required();
  eval_cmd->add_option("--baseline", baseline_path, "second prediction for the error-reduction line");

  auto* stats_cmd = app.add_subcommand("stats-candidates", "candidate governors before/after segmentation");
  stats_cmd->add_option("--input", input_path)->required();
  stats_cmd->add_option("--models", models_dir, "predict roles instead of using the gold ROLE column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*tagger_cmd) {
      write_model(out_path, train_tagger(load_corpus(corpus_path), add_k));
    } else if (*roles_cmd) {
      write_model(out_path, train_disambiguator(load_corpus(corpus_path), window, hp));
    } else if (*chunker_cmd) {
      write_model(out_path, train_chunker(load_corpus(corpus_path), add_k));
    } else if (*parser_cmd) {
      auto corpus = load_corpus(corpus_path);
      ParserMode m = parse_mode(mode);
      std::vector<DependencyTree> trees;
      if (whole) trees = whole_sentence_trees(corpus);
      else if (m == ParserMode::NounPhrase) trees = derive_np_trees(corpus);
      else trees = derive_segment_trees(corpus, PrepositionLexicon::defaults());
      write_model(out_path, train_parser(trees, m, add_k));
    } else if (*all_cmd) {
      TrainOptions options;
      options.add_k = add_k;
      options.train_tagger = !no_tagger;
      train_bundle(load_corpus(corpus_path), options).save_dir(out_path);
    } else if (*parse_cmd) {
      auto models = load_models(models_dir);
      auto input = load_input(input_path, text, retag);
      ParseOptions options;
      options.repair = repair == "on";
      options.trace = trace;
      Output out(out_path);
      std::vector<AnnotatedSentence> batch(1);
      int defective = 0;
      for (size_t s = 0; s < input.size(); ++s) {
        auto result = strategy == "dc" ? parse_dc(models, input[s].tokens, options)
                                       : parse_baseline(models, input[s].tokens, options);
        auto& sentence = result.sentence;
        sentence.comments = input[s].comments;
        for (const auto& line : result.trace) sentence.comments.push_back("# trace: " + line);
        if (!result.validity.proper()) {
          ++defective;
          sentence.comments.push_back("# validity: " + result.validity.describe());
          std::cerr << "warning: sentence " << s + 1 << " has a defective tree: " << result.validity.describe()
                    << "\n";
        }
        batch[0] = std::move(sentence);
        write_corpus(*out.stream, batch);
      }
      if (defective > 0) std::cerr << "warning: " << defective << " defective tree(s)\n";
    } else if (*segment_cmd || *bracket_cmd) {
      auto models = load_models(models_dir);
      for (const auto& sentence : load_input(input_path, text, retag)) {
        auto tokens = ensure_tagged(models, sentence.tokens);
        auto roles = models.roles.disambiguate(tokens);
        auto seg = segment(tokens, roles);
        if (*segment_cmd) {
          std::cout << format_segmentation(tokens, seg) << "\n";
          continue;
        }
        std::vector<NPSpan> spans;
        for (const auto& span : seg.segments) {
          if (span.empty()) continue;
          std::span<const Token> part(tokens.data() + span.begin, span.size());
          for (auto np : bracket(models.chunker, part)) spans.push_back({np.start + span.begin, np.end + span.begin});
        }
        std::cout << format_brackets(tokens, spans) << "\n";
      }
    } else if (*eval_cmd) {
      auto gold = load_corpus(gold_path);
      auto report = evaluate(gold, load_corpus(pred_path));
      std::vector<std::vector<LinkWordRole>> roles;
      for (const auto& s : gold) roles.push_back(s.roles);
      auto stats = candidate_reduction_stats(gold, roles);
      report.mean_candidates_sentence = stats.mean_sentence_raw;
      report.mean_candidates_segment = stats.mean_segment_raw;
      std::cout << format_report(report);
      if (!baseline_path.empty()) {
        auto base = evaluate(gold, load_corpus(baseline_path));
        std::printf("baseline_governor_accuracy=%.4f\n", base.governor_accuracy());
        std::printf("error_reduction=%.4f\n", error_reduction(base.governor_accuracy(), report.governor_accuracy()));
      }
    } else if (*stats_cmd) {
      auto corpus = load_corpus(input_path);
      std::vector<std::vector<LinkWordRole>> roles;
      std::optional<ModelBundle> models;
      if (!models_dir.empty()) models = load_models(models_dir);
      for (const auto& s : corpus)
        roles.push_back(models ? models->roles.disambiguate(s.tokens) : s.roles);
      std::cout << format_candidate_stats(candidate_reduction_stats(corpus, roles));
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
