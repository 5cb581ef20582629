#pragma once

#include <span>
#include <string>
#include <vector>

#include "clausecut/core.h"

namespace clausecut {

// Half-open token range.
struct Span {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool contains(int i) const { return i >= begin && i < end; }
  bool operator==(const Span&) const = default;
};

struct LinkWord {
  int index = 0;
  LinkWordRole role = LinkWordRole::NotLinkWord;
  // True for the terminal "." added to sentences without final punctuation;
  // its index is one past the last token.
  bool synthetic = false;

  bool operator==(const LinkWord&) const = default;
};

// (segment_0) linkword_0 (segment_1) linkword_1 ... (segment_n) linkword_n
// linkword_n is the sentence-final punctuation (role NotLinkWord).
struct SegmentedSentence {
  std::vector<Span> segments;
  std::vector<LinkWord> linkwords;
  int token_count = 0;

  int size() const { return static_cast<int>(segments.size()); }
  const LinkWord& final_linkword() const { return linkwords.back(); }
  // Segment index containing token i, or -1 for link words.
  int segment_of(int token) const;
  int non_empty_count() const;
  // Token indices in order, link words included, synthetic ones excluded.
  std::vector<int> flatten() const;

  bool operator==(const SegmentedSentence&) const = default;
};

// Splits at every token whose role is segmenting.  The last token becomes
// linkword_n when tagged "."; otherwise a synthetic "." is appended.
SegmentedSentence segment(std::span<const Token> sentence, std::span<const LinkWordRole> roles);

// One line per segment (words joined by spaces, empty segments as an empty
// line) and one "LW:\t<form>\t<role>" line per link word.
std::string format_segmentation(std::span<const Token> sentence, const SegmentedSentence& seg);

}  // namespace clausecut
