#include "clausecut/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "clausecut/errors.h"
#include "clausecut/tagset.h"
#include "clausecut/text_io.h"

namespace clausecut {

namespace {

constexpr const char* kColumnNames[] = {"INDEX", "FORM", "POS", "GOVERNOR", "ROLE", "BIO"};

struct LineError {
  std::string source;
  int line;
  [[noreturn]] void column(int col, const std::string& message) const {
    throw InputError(source + ":" + std::to_string(line) + ": column " + std::to_string(col + 1) +
                     " (" + kColumnNames[col] + "): " + message);
  }
  [[noreturn]] void general(const std::string& message) const {
    throw InputError(source + ":" + std::to_string(line) + ": " + message);
  }
};

void finish_sentence(AnnotatedSentence& s, std::vector<AnnotatedSentence>& out,
                     const LineError& where) {
  const int n = s.size();
  for (int i = 0; i < n; ++i) {
    int g = s.governors[i];
    if (g != kRoot && g != kNoGovernor && g >= n)
      where.general("sentence " + std::to_string(out.size()) + ": governor " + std::to_string(g) +
                    " of token " + std::to_string(i) + " is outside the sentence");
  }
  out.push_back(std::move(s));
  s = AnnotatedSentence{};
}

}  // namespace

std::string_view bio_name(Bio tag) {
  switch (tag) {
    case Bio::B: return "B-NP";
    case Bio::I: return "I-NP";
    case Bio::O: return "O";
  }
  return "O";
}

bool AnnotatedSentence::fully_attached() const {
  for (int g : governors)
    if (g == kNoGovernor) return false;
  return true;
}

DependencyTree AnnotatedSentence::tree() const {
  if (!fully_attached()) throw InputError("sentence has unannotated governors");
  return DependencyTree(tokens, governors);
}

std::vector<NPSpan> AnnotatedSentence::np_spans() const { return spans_from_bio(chunks); }

AnnotatedSentence make_sentence(std::vector<Token> tokens) {
  AnnotatedSentence s;
  s.governors.assign(tokens.size(), kNoGovernor);
  s.roles.assign(tokens.size(), LinkWordRole::NotLinkWord);
  s.tokens = std::move(tokens);
  return s;
}

std::vector<NPSpan> spans_from_bio(std::span<const Bio> tags) {
  std::vector<NPSpan> spans;
  const int n = static_cast<int>(tags.size());
  for (int i = 0; i < n; ++i) {
    if (tags[i] == Bio::O) continue;
    // A stray I-NP opens a span just like B-NP.
    int start = i;
    while (i + 1 < n && tags[i + 1] == Bio::I) ++i;
    spans.push_back({start, i});
  }
  return spans;
}

std::vector<Bio> bio_from_spans(std::span<const NPSpan> spans, int length) {
  std::vector<Bio> tags(length, Bio::O);
  for (const auto& span : spans) {
    tags.at(span.start) = Bio::B;
    for (int i = span.start + 1; i <= span.end; ++i) tags.at(i) = Bio::I;
  }
  return tags;
}

std::vector<AnnotatedSentence> read_corpus(std::istream& in, const std::string& source) {
  std::vector<AnnotatedSentence> out;
  AnnotatedSentence current;
  std::string line;
  LineError where{source, 0};
  int columns = 0;
  while (std::getline(in, line)) {
    ++where.line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!current.tokens.empty()) finish_sentence(current, out, where);
      continue;
    }
    if (line[0] == '#') {
      if (!current.tokens.empty()) where.general("comment inside a sentence");
      current.comments.push_back(line);
      continue;
    }
    auto fields = split(line, '\t');
    if (fields.size() != 5 && fields.size() != 6)
      where.general("expected 5 or 6 tab-separated columns, found " + std::to_string(fields.size()));
    if (current.tokens.empty()) {
      columns = static_cast<int>(fields.size());
    } else if (static_cast<int>(fields.size()) != columns) {
      where.general("column count changes inside a sentence");
    }

    const int position = current.size();
    long long index = -1;
    try {
      index = parse_integer(fields[0]);
    } catch (const InputError&) {
      where.column(0, "not an integer: '" + fields[0] + "'");
    }
    if (index != position)
      where.column(0, "expected index " + std::to_string(position) + ", found " + fields[0]);
    if (fields[1].empty()) where.column(1, "empty word form");
    if (!is_penn_tag(fields[2])) where.column(2, "unknown POS tag '" + fields[2] + "'");

    int governor = kNoGovernor;
    if (fields[3] == "ROOT") {
      governor = kRoot;
    } else if (fields[3] != "_") {
      long long g = -1;
      try {
        g = parse_integer(fields[3]);
      } catch (const InputError&) {
        where.column(3, "expected an index, ROOT or _, found '" + fields[3] + "'");
      }
      if (g < 0) where.column(3, "negative governor " + fields[3]);
      if (g == position) where.column(3, "token governs itself");
      governor = static_cast<int>(g);
    }

    LinkWordRole role = LinkWordRole::NotLinkWord;
    if (fields[4] != "_") {
      auto parsed = parse_role(fields[4]);
      if (!parsed) where.column(4, "unknown role '" + fields[4] + "'");
      if (!role_applies_to(*parsed, fields[2]))
        where.column(4, "role " + fields[4] + " cannot apply to tag " + fields[2]);
      role = *parsed;
    }

    if (columns == 6) {
      Bio tag;
      if (fields[5] == "B-NP") tag = Bio::B;
      else if (fields[5] == "I-NP") tag = Bio::I;
      else if (fields[5] == "O") tag = Bio::O;
      else where.column(5, "unknown chunk tag '" + fields[5] + "'");
      current.chunks.push_back(tag);
    }
    current.tokens.push_back({position, fields[1], fields[2]});
    current.governors.push_back(governor);
    current.roles.push_back(role);
  }
  if (!current.tokens.empty()) finish_sentence(current, out, where);
  return out;
}

std::vector<AnnotatedSentence> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  return read_corpus(in, path.string());
}

void write_corpus(std::ostream& out, std::span<const AnnotatedSentence> sentences) {
  for (const auto& s : sentences) {
    for (const auto& c : s.comments) out << c << '\n';
    for (int i = 0; i < s.size(); ++i) {
      out << i << '\t' << s.tokens[i].form << '\t' << s.tokens[i].pos << '\t';
      int g = s.governors.at(i);
      if (g == kRoot) out << "ROOT";
      else if (g == kNoGovernor) out << '_';
      else out << g;
      out << '\t';
      LinkWordRole role = s.roles.at(i);
      if (role == LinkWordRole::NotLinkWord) out << '_';
      else out << role_name(role);
      if (s.has_chunks()) out << '\t' << bio_name(s.chunks.at(i));
      out << '\n';
    }
    out << '\n';
  }
}

void write_corpus(const std::filesystem::path& path, std::span<const AnnotatedSentence> sentences) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write corpus file " + path.string());
  write_corpus(out, sentences);
}

}  // namespace clausecut
