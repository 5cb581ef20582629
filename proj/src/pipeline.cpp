#include "clausecut/pipeline.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "clausecut/errors.h"
#include "clausecut/tagset.h"

namespace clausecut {

namespace fs = std::filesystem;

std::vector<std::string> tokenize(std::string_view text) {
  static constexpr std::string_view kSplit = ",.;:!?()\"";
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (kSplit.find(c) != std::string_view::npos) {
      flush();
      out.emplace_back(1, c);
    } else {
      word += c;
    }
  }
  flush();
  return out;
}

namespace {

template <typename Model>
void save_file(const fs::path& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  model.save(out);
  if (!out) throw InputError("error writing " + path.string());
}

template <typename Model>
Model load_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return Model::load(in, path.string());
}

}  // namespace

void ModelBundle::save_dir(const fs::path& dir) const {
  fs::create_directories(dir);
  if (tagger) save_file(dir / "tagger.model", *tagger);
  save_file(dir / "roles.model", roles);
  save_file(dir / "chunker.model", chunker);
  save_file(dir / "parser-np.model", np_parser);
  save_file(dir / "parser-segment.model", segment_parser);
  if (baseline) save_file(dir / "parser-baseline.model", *baseline);
}

ModelBundle ModelBundle::load_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError("model directory not found: " + dir.string());
  ModelBundle bundle;
  if (fs::exists(dir / "tagger.model")) bundle.tagger = load_file<TaggerModel>(dir / "tagger.model");
  bundle.roles = load_file<Disambiguator>(dir / "roles.model");
  bundle.chunker = load_file<ChunkerModel>(dir / "chunker.model");
  bundle.np_parser = load_file<ParserModel>(dir / "parser-np.model");
  bundle.segment_parser = load_file<ParserModel>(dir / "parser-segment.model");
  if (fs::exists(dir / "parser-baseline.model"))
    bundle.baseline = load_file<ParserModel>(dir / "parser-baseline.model");
  if (bundle.np_parser.mode() != ParserMode::NounPhrase)
    throw InputError((dir / "parser-np.model").string() + ": not an np-mode parser");
  if (bundle.segment_parser.mode() != ParserMode::Segment)
    throw InputError((dir / "parser-segment.model").string() + ": not a segment-mode parser");
  return bundle;
}

std::vector<DependencyTree> derive_np_trees(std::span<const AnnotatedSentence> corpus) {
  std::vector<DependencyTree> out;
  for (const auto& s : corpus) {
    if (!s.has_chunks()) continue;
    for (const auto& span : s.np_spans()) {
      std::vector<Token> tokens;
      std::vector<int> governors;
      bool annotated = true;
      for (int i = span.start; i <= span.end; ++i) {
        Token t = s.tokens[i];
        t.index = i - span.start;
        tokens.push_back(std::move(t));
        int g = s.governors[i];
        if (g == kNoGovernor) annotated = false;
        governors.push_back(span.contains(g) ? g - span.start : kRoot);
      }
      if (!annotated) continue;
      DependencyTree tree(std::move(tokens), std::move(governors));
      if (validate_tree(tree).proper()) out.push_back(std::move(tree));
    }
  }
  return out;
}

std::vector<DependencyTree> derive_segment_trees(std::span<const AnnotatedSentence> corpus,
                                                 const PrepositionLexicon& lexicon) {
  std::vector<DependencyTree> out;
  for (const auto& s : corpus) {
    if (!s.has_chunks() || !s.fully_attached()) continue;
    auto seg = segment(s.tokens, s.roles);
    auto spans = s.np_spans();
    auto groups = group_nps(s.tokens, spans, s.roles, lexicon);
    for (const auto& span : seg.segments) {
      if (span.empty()) continue;
      std::span<const Token> tokens(s.tokens.data() + span.begin, span.size());
      auto extraction = extract_nps(tokens, groups);

      // sentence index -> compressed position
      std::map<int, int> position;
      for (int c = 0; c < static_cast<int>(extraction.compressed.size()); ++c) {
        if (extraction.source[c] >= 0) {
          position[extraction.source[c]] = c;
        } else {
          for (const auto& t : extraction.placeholders.at(c).tokens) position[t.index] = c;
        }
      }
      auto map_governor = [&](int g, int self) {
        auto it = position.find(g);
        if (it == position.end() || it->second == self) return kRoot;
        return it->second;
      };

      std::vector<int> governors;
      for (int c = 0; c < static_cast<int>(extraction.compressed.size()); ++c) {
        if (extraction.source[c] >= 0) {
          governors.push_back(map_governor(s.governors[extraction.source[c]], c));
          continue;
        }
        // The group head is the member governed from outside the group.
        int governor = kRoot;
        const auto& members = extraction.placeholders.at(c).tokens;
        for (const auto& t : members) {
          int g = s.governors[t.index];
          bool inside = std::any_of(members.begin(), members.end(),
                                    [&](const Token& m) { return m.index == g; });
          if (!inside) {
            governor = map_governor(g, c);
            break;
          }
        }
        governors.push_back(governor);
      }
      DependencyTree tree(extraction.compressed, std::move(governors));
      if (validate_tree(tree).proper()) out.push_back(std::move(tree));
    }
  }
  return out;
}

std::vector<DependencyTree> whole_sentence_trees(std::span<const AnnotatedSentence> corpus) {
  std::vector<DependencyTree> out;
  for (const auto& s : corpus) {
    if (!s.fully_attached()) continue;
    auto tree = s.tree();
    if (validate_tree(tree).proper()) out.push_back(std::move(tree));
  }
  return out;
}

ModelBundle train_bundle(std::span<const AnnotatedSentence> corpus, const TrainOptions& options) {
  if (corpus.empty()) throw InputError("training corpus is empty");
  ModelBundle bundle;
  if (options.train_tagger) bundle.tagger = train_tagger(corpus, options.add_k);
  bundle.roles = train_disambiguator(corpus, options.window_size, options.hyperparams, options.lexicon);
  bundle.chunker = train_chunker(corpus, options.add_k);
  bundle.np_parser = train_parser(derive_np_trees(corpus), ParserMode::NounPhrase, options.add_k);
  bundle.segment_parser =
      train_parser(derive_segment_trees(corpus, options.lexicon), ParserMode::Segment, options.add_k);
  if (options.train_baseline)
    bundle.baseline = train_parser(whole_sentence_trees(corpus), ParserMode::Segment, options.add_k);
  return bundle;
}

std::vector<Token> ensure_tagged(const ModelBundle& models, std::vector<Token> tokens) {
  if (tokens.empty()) throw InputError("empty sentence");
  bool missing = std::any_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.pos.empty(); });
  if (!missing) return tokens;
  if (!models.tagger) throw StageError("tag", "no tagger model loaded and the input has no POS tags");
  std::vector<std::string> words;
  for (const auto& t : tokens) words.push_back(t.form);
  auto tags = tag(*models.tagger, words);
  for (size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].pos.empty()) tokens[i].pos = tags[i];
  return tokens;
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const InputError& e) {
    throw StageError(name, e.what());
  }
}

DependencyTree parse_span(const ParserModel& model, std::span<const Token> tokens, bool repair) {
  std::vector<Token> local(tokens.begin(), tokens.end());
  for (int i = 0; i < static_cast<int>(local.size()); ++i) local[i].index = i;
  auto tree = select_governors(model, local);
  if (repair && !validate_tree(tree).proper()) tree = repair_tree(tree, model);
  return tree;
}

ParseResult finish(std::vector<Token> tokens, DependencyTree tree, std::vector<LinkWordRole> roles,
                   std::vector<NPSpan> spans, SegmentedSentence seg, std::vector<std::string> trace) {
  ParseResult result;
  result.sentence = make_sentence(tokens);
  result.sentence.governors = tree.governors();
  if (!roles.empty()) result.sentence.roles = std::move(roles);
  result.sentence.chunks = bio_from_spans(spans, static_cast<int>(tokens.size()));
  result.validity = validate_tree(tree);
  result.tree = std::move(tree);
  result.segmentation = std::move(seg);
  result.trace = std::move(trace);
  return result;
}

}  // namespace

ParseResult parse_dc(const ModelBundle& models, std::vector<Token> tokens, const ParseOptions& options) {
  tokens = stage("tag", [&] { return ensure_tagged(models, std::move(tokens)); });
  auto roles = stage("disambiguate", [&] { return models.roles.disambiguate(tokens); });
  auto seg = stage("segment", [&] { return segment(tokens, roles); });

  std::vector<NPSpan> spans;
  stage("chunk", [&] {
    for (const auto& span : seg.segments) {
      if (span.empty()) continue;
      std::span<const Token> part(tokens.data() + span.begin, span.size());
      for (auto np : bracket(models.chunker, part))
        spans.push_back({np.start + span.begin, np.end + span.begin});
    }
    return 0;
  });
  auto groups = group_nps(tokens, spans, roles, models.roles.lexicon);

  std::vector<SegmentInput> inputs;
  stage("parse", [&] {
    for (const auto& span : seg.segments) {
      SegmentInput input;
      if (!span.empty()) {
        std::span<const Token> part(tokens.data() + span.begin, span.size());
        input.extraction = extract_nps(part, groups);
        input.compressed_tree = parse_span(models.segment_parser, input.extraction.compressed, options.repair);
        for (const auto& [position, placeholder] : input.extraction.placeholders) {
          auto& trees = input.np_trees[position];
          for (const auto& np : placeholder.group.spans) {
            std::span<const Token> words(tokens.data() + np.start, np.size());
            // NP trees must be proper for re-attachment, whatever the repair setting.
            trees.push_back(parse_span(models.np_parser, words, true));
          }
        }
      }
      inputs.push_back(std::move(input));
    }
    return 0;
  });

  SynthesisConfig config = options.synthesis;
  config.trace = options.trace;
  config.on_failure = options.repair ? RuleFailure::Neighbour : RuleFailure::Unattached;
  auto synthesis = stage("synthesize", [&] { return synthesize(tokens, seg, inputs, config); });
  auto trace = std::move(synthesis.trace);
  DependencyTree tree = std::move(synthesis.tree);
  if (options.repair && !synthesis.validity.proper()) {
    if (options.trace) trace.push_back("repair\t" + synthesis.validity.describe());
    tree = repair_tree(tree, models.segment_parser);
  }
  return finish(std::move(tokens), std::move(tree), std::move(roles), std::move(spans), std::move(seg),
                std::move(trace));
}

ParseResult parse_baseline(const ModelBundle& models, std::vector<Token> tokens,
                           const ParseOptions& options) {
  if (!models.baseline) throw StageError("parse", "no baseline parser model loaded");
  tokens = stage("tag", [&] { return ensure_tagged(models, std::move(tokens)); });
  auto tree = stage("parse", [&] { return parse_span(*models.baseline, tokens, options.repair); });
  std::vector<LinkWordRole> roles(tokens.size(), LinkWordRole::NotLinkWord);
  auto seg = segment(tokens, roles);
  auto result = finish(std::move(tokens), std::move(tree), {}, {}, std::move(seg), {});
  result.sentence.chunks.clear();
  return result;
}

}  // namespace clausecut
