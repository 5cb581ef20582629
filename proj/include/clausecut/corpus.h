#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "clausecut/core.h"

namespace clausecut {

enum class Bio { B, I, O };

std::string_view bio_name(Bio tag);  // "B-NP", "I-NP", "O"

// GOVERNOR column value "_": governor not annotated.
inline constexpr int kNoGovernor = -2;

// One sentence of the tab-separated corpus format:
//   INDEX  FORM  POS  GOVERNOR  ROLE  [BIO]
// GOVERNOR is a 0-based index, "ROOT" or "_"; ROLE is a LinkWordRole name or
// "_" (read as NotLinkWord).  Lines starting with '#' before a sentence are
// kept as its comments.
struct AnnotatedSentence {
  std::vector<std::string> comments;
  std::vector<Token> tokens;
  std::vector<int> governors;
  std::vector<LinkWordRole> roles;
  std::vector<Bio> chunks;  // empty when the sentence carries no BIO column

  int size() const { return static_cast<int>(tokens.size()); }
  bool has_chunks() const { return !chunks.empty(); }
  bool fully_attached() const;
  // Throws InputError when a governor is missing.
  DependencyTree tree() const;
  std::vector<NPSpan> np_spans() const;

  bool operator==(const AnnotatedSentence&) const = default;
};

// Unannotated sentence: governors "_", roles NotLinkWord, no chunks.
AnnotatedSentence make_sentence(std::vector<Token> tokens);

std::vector<NPSpan> spans_from_bio(std::span<const Bio> tags);
std::vector<Bio> bio_from_spans(std::span<const NPSpan> spans, int length);

std::vector<AnnotatedSentence> read_corpus(std::istream& in, const std::string& source = "<stream>");
std::vector<AnnotatedSentence> read_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, std::span<const AnnotatedSentence> sentences);
void write_corpus(const std::filesystem::path& path, std::span<const AnnotatedSentence> sentences);

}  // namespace clausecut
