// One PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "clausecut/eval.h"
#include "clausecut/pipeline.h"
#include "clausecut/tagset.h"
#include "support/fixtures.h"
#include "support/oracles.h"
#include "support/random_corpus.h"
#include "support/toy_grammar.h"

using namespace clausecut;
using fixtures::toy_corpus;
using fixtures::toy_models;
using fixtures::toy_sentence;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed checks for one criterion.
struct Checks {
  std::vector<std::string> failures;
  int total = 0;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (!ok) failures.push_back(what);
  }
};

int index_of(const AnnotatedSentence& s, const std::string& form, int nth = 1) {
  for (int i = 0; i < s.size(); ++i)
    if (s.tokens[i].form == form && --nth == 0) return i;
  return -1;
}

int failed_criteria = 0;

void report(int number, const std::string& name, const Checks& c, const std::string& detail) {
  const bool pass = c.failures.empty();
  failed_criteria += !pass;
  std::cout << (pass ? "PASS" : "FAIL") << "  " << number << ". " << name << ": " << detail;
  if (!pass) {
    std::cout << " (" << c.failures.size() << "/" << c.total << " checks failed; first: " << c.failures.front()
              << ")";
  }
  std::cout << "\n";
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << v;
  return out.str();
}

// ---------------------------------------------------------------------------

void rule_conformance() {
  const auto start = Clock::now();
  Checks c;
  const auto& models = toy_models();
  const auto lexicon = PrepositionLexicon::defaults();

  // Chocolates sentence: segmentation, brackets and full tree.
  {
    const auto& s = toy_sentence("He likes chocolates , candies and cakes but she likes sour prunes .");
    auto seg = segment(s.tokens, s.roles);
    c.expect(seg.size() == 2 && seg.segments[0] == Span{0, 7} && seg.segments[1] == Span{8, 12},
             "chocolates sentence segmentation");
    auto result = parse_dc(models, s.tokens);
    c.expect(result.sentence.roles == s.roles, "chocolates sentence roles");
    c.expect(result.sentence.chunks == s.chunks, "chocolates sentence NP brackets");
    c.expect(result.tree.governors() == s.governors, "chocolates sentence tree");
  }

  // Comma and conjunction labels.
  {
    const auto& s = toy_sentence(
        "When Jane goes to school , she takes a bus , walks 5 minutes and continues the journey on the rail .");
    auto roles = models.roles.disambiguate(s.tokens);
    c.expect(roles[index_of(s, ",", 1)] == LinkWordRole::ProsodicComma, "Jane: first comma prosodic");
    c.expect(roles[index_of(s, ",", 2)] == LinkWordRole::LogicalConjunctiveComma, "Jane: second comma logical");
    c.expect(roles[index_of(s, "and")] == LinkWordRole::LogicalConjunction, "Jane: and logical");
  }
  for (const auto& [text, comma, but] :
       {std::tuple{"I like ice-cream , hot-dogs but not pies .", LinkWordRole::LogicalConjunctiveComma,
                   LinkWordRole::LogicalConjunction},
        std::tuple{"I like ice-cream , crave for hot-dogs but detest pies .", LinkWordRole::ClausalConjunctiveComma,
                   LinkWordRole::ClausalConjunction}}) {
    const auto& s = toy_sentence(text);
    auto roles = models.roles.disambiguate(s.tokens);
    c.expect(roles[index_of(s, ",")] == comma, std::string(text) + ": comma");
    c.expect(roles[index_of(s, "but")] == but, std::string(text) + ": but");
  }

  // NP compression of the three NN VBZ NN examples.
  for (std::string text : {"He likes chocolates , candies and cakes but she likes sour prunes .",
                           "The cat likes fish .",
                           "The President of the United States of America meets the Queen of England ."}) {
    const auto& s = toy_sentence(text);
    auto groups = group_nps(s.tokens, s.np_spans(), s.roles, lexicon);
    auto seg = segment(s.tokens, s.roles);
    std::span<const Token> first(s.tokens.data() + seg.segments[0].begin, seg.segments[0].size());
    auto extraction = extract_nps(first, groups);
    std::vector<std::string> pos;
    for (const auto& t : extraction.compressed) pos.push_back(t.pos);
    c.expect(pos == std::vector<std::string>{"NN", "VBZ", "NN"}, text + ": compression");
  }

  // Link-word rules on gold segment parses: every toy sentence, including the
  // "that"/"glad" attachments and the prosodic, clausal and head-segment rules.
  for (const auto& s : toy_corpus()) {
    auto seg = segment(s.tokens, s.roles);
    auto result = synthesize_segments(s.tokens, seg, fixtures::gold_segment_parses(s, seg));
    c.expect(result.tree.governors() == s.governors, "synthesis: " + fixtures::text_of(s));
  }
  {
    const auto& s = toy_sentence("I know that he is angry .");
    auto seg = segment(s.tokens, s.roles);
    auto parses = fixtures::gold_segment_parses(s, seg);
    Assignments assigned(s.size(), kNoGovernor);
    auto a = attach_subordinating_preposition(s.tokens, seg, 0, parses, assigned);
    c.expect(a.governor == index_of(s, "know") && a.dependent == index_of(s, "is"), "that -> know");
  }
  {
    const auto& s = toy_sentence("I am glad that I have gained weight .");
    auto seg = segment(s.tokens, s.roles);
    auto parses = fixtures::gold_segment_parses(s, seg);
    Assignments assigned(s.size(), kNoGovernor);
    auto a = attach_subordinating_preposition(s.tokens, seg, 0, parses, assigned);
    c.expect(a.governor == index_of(s, "glad") && a.dependent == index_of(s, "gained"), "that -> glad");
  }

  // Manual sentence: segmentation and head verb.
  {
    const auto& s = toy_sentence(
        "If the Workbench cannot find any fuzzy match , it will display a corresponding message ( `` No match '' ) "
        "in the lower right corner of its status bar and you will be presented with an empty yellow target field .");
    auto seg = segment(s.tokens, models.roles.disambiguate(s.tokens));
    c.expect(seg.size() == 4 && seg.segments[0].empty(), "manual sentence segmentation");
    auto result = parse_dc(models, s.tokens);
    const int display = index_of(s, "display");
    c.expect(result.tree.governor(display) == s.size() - 1, "manual sentence head verb display");
    c.expect(result.validity.proper(), "manual sentence tree proper");
  }

  const double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "runtime " + fixed(elapsed) + " s");
  report(1, "rule conformance", c, std::to_string(c.total) + " fixture checks in " + fixed(elapsed) + " s");
}

void oracle_equivalence() {
  const auto start = Clock::now();
  Checks c;
  std::string detail;
  for (const auto& [name, run] : {std::pair{"tagger", fixtures::tagger_oracle(20240601)},
                                  std::pair{"chunker", fixtures::chunker_oracle(1999)},
                                  std::pair{"parser", fixtures::parser_oracle(42)}}) {
    c.expect(run.cases >= 1000, std::string(name) + ": only " + std::to_string(run.cases) + " cases");
    c.expect(run.mismatches == 0, std::string(name) + ": " + std::to_string(run.mismatches) + " mismatches");
    c.expect(run.ill_formed == 0, std::string(name) + ": ill-formed output");
    detail += std::string(detail.empty() ? "" : ", ") + name + " " + std::to_string(run.cases - run.mismatches) +
              "/" + std::to_string(run.cases);
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 60.0, "runtime " + fixed(elapsed) + " s");
  report(2, "oracle equivalence", c, detail + " in " + fixed(elapsed) + " s");
}

void perplexity() {
  Checks c;
  int multi_words = 0;
  for (const auto& s : toy_corpus()) {
    auto seg = segment(s.tokens, s.roles);
    if (seg.size() < 2) continue;
    for (const auto& count : candidate_counts(s.tokens, seg)) {
      ++multi_words;
      c.expect(count.segment_raw < count.sentence_raw,
               fixtures::text_of(s) + ": token " + std::to_string(count.token));
    }
  }
  const auto& s = toy_sentence("He likes oranges but she prefers apples .");
  auto counts = candidate_counts(s.tokens, segment(s.tokens, s.roles));
  int before = -1, after = -1;
  for (const auto& count : counts)
    if (count.token == index_of(s, "oranges")) {
      before = count.sentence_words;
      after = count.segment_words;
    }
  c.expect(before == 5 && after == 2, "oranges " + std::to_string(before) + " -> " + std::to_string(after));
  report(3, "perplexity reduction", c,
         std::to_string(multi_words) + " words in multi-segment sentences, oranges " + std::to_string(before) +
             " -> " + std::to_string(after));
}

std::vector<Token> random_tag_sequence(std::mt19937_64& rng) {
  static const std::vector<std::string> prepositions = {"of", "in", "that", "because", "if", "with", "while"};
  const auto& tags = penn_tags();
  const int n = fixtures::uniform(rng, 1, 14);
  std::vector<Token> tokens;
  for (int i = 0; i < n; ++i) {
    std::string pos(tags[fixtures::uniform(rng, 0, static_cast<int>(tags.size()) - 1)]);
    std::string form = pos == "IN" ? prepositions[fixtures::uniform(rng, 0, 6)] : "w" + std::to_string(i);
    tokens.push_back({i, form, pos});
  }
  return tokens;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void tree_validity() {
  Checks c;
  const auto& models = toy_models();
  ParseOptions off;
  off.repair = false;
  int outputs = 0, defective_off = 0;
  auto check_one = [&](const std::vector<Token>& tokens, const std::string& label) {
    for (bool dc : {true, false}) {
      auto on = dc ? parse_dc(models, tokens) : parse_baseline(models, tokens);
      ++outputs;
      c.expect(validate_tree(on.tree).proper(), label + (dc ? " dc" : " baseline") + " repaired tree defective");
      auto raw = dc ? parse_dc(models, tokens, off) : parse_baseline(models, tokens, off);
      const bool proper = validate_tree(raw.tree).proper();
      defective_off += !proper;
      c.expect(raw.validity.proper() == proper, label + " validity flag disagrees with the tree");
    }
  };
  for (const auto& s : toy_corpus()) check_one(s.tokens, fixtures::text_of(s));
  std::mt19937_64 rng(10000);
  for (int k = 0; k < 10000; ++k) {
    try {
      check_one(random_tag_sequence(rng), "random sequence " + std::to_string(k));
    } catch (const std::exception& e) {
      c.expect(false, "random sequence " + std::to_string(k) + " threw: " + e.what());
    }
  }

  // Through the CLI: every defective output carries a validity comment.
  auto dir = fixtures::temp_dir("acceptance-cli");
  auto models_dir = dir / "models", out = dir / "out.conll";
  models.save_dir(models_dir);
  std::vector<AnnotatedSentence> random_corpus;
  for (int k = 0; k < 500; ++k) random_corpus.push_back(make_sentence(random_tag_sequence(rng)));
  write_corpus(dir / "random.conll", random_corpus);
  int flagged = 0, cli_defective = 0;
  for (const char* strategy : {"dc", "baseline"}) {
    std::string cmd = std::string("\"") + CLAUSECUT_CLI + "\" parse --models \"" + models_dir.string() +
                      "\" --repair off --strategy " + strategy + " --input \"" + (dir / "random.conll").string() +
                      "\" --output \"" + out.string() + "\" 2>\"" + (dir / "stderr.txt").string() + "\"";
    int status = std::system(cmd.c_str());
    c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, std::string("CLI ") + strategy + " run failed");
    auto parsed = read_corpus(out);
    c.expect(parsed.size() == random_corpus.size(), "CLI output length");
    int warnings = 0;
    for (const auto& s : parsed) {
      const bool defective = !validate_tree(DependencyTree(s.tokens, s.governors)).proper();
      bool comment = false;
      for (const auto& line : s.comments) comment = comment || line.rfind("# validity: defective", 0) == 0;
      cli_defective += defective;
      flagged += comment;
      c.expect(defective == comment, std::string("CLI ") + strategy + ": unflagged or misflagged tree");
      warnings += defective;
    }
    auto err = slurp((dir / "stderr.txt").string());
    int warned = 0;
    for (size_t at = err.find("has a defective tree"); at != std::string::npos;
         at = err.find("has a defective tree", at + 1))
      ++warned;
    c.expect(warned == warnings, std::string("CLI ") + strategy + ": stderr warnings");
  }
  report(4, "tree validity", c,
         std::to_string(outputs) + " repaired outputs proper; " + std::to_string(defective_off) +
             " unrepaired defects flagged in-process, " + std::to_string(flagged) + "/" +
             std::to_string(cli_defective) + " flagged by the CLI");
}

void comparative() {
  Checks c;
  const auto& models = toy_models();
  auto gold = fixtures::conjoined_sentences(200, 2024);
  for (const auto& s : gold) c.expect(validate_tree(s.tree()).proper(), "generated tree improper");
  std::vector<AnnotatedSentence> dc, base;
  for (const auto& s : gold) {
    dc.push_back(parse_dc(models, s.tokens).sentence);
    base.push_back(parse_baseline(models, s.tokens).sentence);
  }
  const double dc_acc = evaluate(gold, dc).governor_accuracy();
  const double base_acc = evaluate(gold, base).governor_accuracy();
  c.expect(dc_acc >= base_acc, "D&C " + fixed(dc_acc) + " < baseline " + fixed(base_acc));
  const double reduction = error_reduction(0.811, 0.851);
  c.expect(std::abs(reduction - 0.212) <= 0.001, "error reduction " + fixed(reduction, 4));
  report(5, "comparative accuracy", c,
         "D&C " + fixed(dc_acc) + " vs baseline " + fixed(base_acc) + " on " + std::to_string(gold.size()) +
             " conjoined sentences; error reduction (0.811 -> 0.851) = " + fixed(100 * reduction, 2) + "%");
}

template <class Model>
std::string saved(const Model& m) {
  std::ostringstream out;
  m.save(out);
  return out.str();
}

void persistence() {
  Checks c;
  // Fresh training, so the check does not depend on the shared fixture.
  const auto& corpus = toy_corpus();
  auto trained = train_bundle(corpus);
  auto again = train_bundle(corpus);
  c.expect(saved(*trained.tagger) == saved(*again.tagger), "tagger training not deterministic");
  c.expect(saved(trained.roles) == saved(again.roles), "disambiguator training not deterministic");
  c.expect(saved(trained.chunker) == saved(again.chunker), "chunker training not deterministic");
  c.expect(saved(trained.segment_parser) == saved(again.segment_parser), "parser training not deterministic");

  auto dir = fixtures::temp_dir("acceptance-bundle");
  trained.save_dir(dir);
  auto loaded = ModelBundle::load_dir(dir);
  c.expect(loaded.tagger && *loaded.tagger == *trained.tagger, "tagger differs after load");
  c.expect(loaded.roles == trained.roles, "disambiguator differs after load");
  c.expect(loaded.chunker == trained.chunker, "chunker differs after load");
  c.expect(loaded.np_parser == trained.np_parser && loaded.segment_parser == trained.segment_parser &&
               loaded.baseline && *loaded.baseline == *trained.baseline,
           "parser differs after load");
  c.expect(saved(*loaded.tagger) == saved(*trained.tagger) && saved(loaded.roles) == saved(trained.roles) &&
               saved(loaded.chunker) == saved(trained.chunker) &&
               saved(loaded.segment_parser) == saved(trained.segment_parser),
           "re-saved model files differ");

  int sentences = 0;
  for (const auto& s : corpus) {
    std::vector<Token> raw;
    for (const auto& t : s.tokens) raw.push_back({t.index, t.form, ""});
    for (const std::vector<Token>* tokens : {&s.tokens, static_cast<const std::vector<Token>*>(&raw)}) {
      ++sentences;
      auto a = parse_dc(trained, *tokens);
      auto b = parse_dc(loaded, *tokens);
      c.expect(a.tree == b.tree && a.sentence == b.sentence, "dc parse differs: " + fixtures::text_of(s));
      auto x = parse_baseline(trained, *tokens);
      auto y = parse_baseline(loaded, *tokens);
      c.expect(x.tree == y.tree, "baseline parse differs: " + fixtures::text_of(s));
    }
  }
  report(6, "determinism and persistence", c,
         "tagger, disambiguator, chunker and parsers reloaded exactly; " + std::to_string(sentences) +
             " parses identical");
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void()>>> criteria = {
      {1, rule_conformance}, {2, oracle_equivalence}, {3, perplexity},
      {4, tree_validity},    {5, comparative},        {6, persistence}};
  for (const auto& [number, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      ++failed_criteria;
      std::cout << "FAIL  " << number << ". aborted: " << e.what() << "\n";
    }
  }
  return failed_criteria == 0 ? 0 : 1;
}
