#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace clausecut {

// The Penn Treebank tagset (36 word tags plus 9 punctuation tags), in the
// fixed order used by one-hot feature layouts and model files.  Brackets use
// the WSJ spellings -LRB- / -RRB-.
std::span<const std::string_view> penn_tags();

std::optional<int> tag_id(std::string_view tag);
bool is_penn_tag(std::string_view tag);

inline constexpr std::string_view kCommaTag = ",";
inline constexpr std::string_view kFinalTag = ".";
inline constexpr std::string_view kConjunctionTag = "CC";
inline constexpr std::string_view kPrepositionTag = "IN";
inline constexpr std::string_view kPlaceholderTag = "NN";

// Any VB* tag or the modal MD.
bool is_verb_tag(std::string_view tag);
bool is_adjective_tag(std::string_view tag);
bool is_punctuation_tag(std::string_view tag);

}  // namespace clausecut
