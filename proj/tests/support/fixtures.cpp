#include "fixtures.h"

#include <sstream>
#include <stdexcept>

#include "clausecut/text_io.h"

using namespace clausecut;

namespace fixtures {

std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(CLAUSECUT_SOURCE_DIR) / relative;
}

const std::vector<AnnotatedSentence>& toy_corpus() {
  static const auto corpus = read_corpus(source_path("data/toy_corpus.conll"));
  return corpus;
}

const ModelBundle& toy_models() {
  static const auto bundle = train_bundle(toy_corpus());
  return bundle;
}

std::string text_of(const AnnotatedSentence& s) {
  std::vector<std::string> forms;
  for (const auto& t : s.tokens) forms.push_back(t.form);
  return join(forms, " ");
}

const AnnotatedSentence& toy_sentence(const std::string& text) {
  for (const auto& s : toy_corpus())
    if (text_of(s) == text) return s;
  throw std::runtime_error("toy corpus has no sentence \"" + text + "\"");
}

std::vector<SegmentParse> gold_segment_parses(const AnnotatedSentence& s, const SegmentedSentence& seg) {
  std::vector<SegmentParse> parses;
  for (const auto& span : seg.segments) {
    std::vector<Token> tokens;
    std::vector<int> governors;
    for (int i = span.begin; i < span.end; ++i) {
      Token t = s.tokens[i];
      t.index = i - span.begin;
      tokens.push_back(t);
      int g = s.governors[i];
      governors.push_back(span.contains(g) ? g - span.begin : kRoot);
    }
    parses.push_back(make_segment_parse(s.tokens, span, DependencyTree(tokens, governors)));
  }
  return parses;
}

std::vector<Token> tagged(const std::string& text) {
  std::istringstream in(text);
  std::vector<Token> tokens;
  std::string item;
  while (in >> item) {
    auto slash = item.rfind('/');
    if (slash == std::string::npos || slash == 0) throw std::runtime_error("bad token " + item);
    tokens.push_back({static_cast<int>(tokens.size()), item.substr(0, slash), item.substr(slash + 1)});
  }
  return tokens;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("clausecut-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
