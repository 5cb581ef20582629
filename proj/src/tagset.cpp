#include "clausecut/tagset.h"

#include <algorithm>
#include <array>

namespace clausecut {

namespace {

constexpr std::array<std::string_view, 45> kPennTags = {
    "CC",  "CD",  "DT",   "EX",  "FW",  "IN",  "JJ",  "JJR", "JJS",
    "LS",  "MD",  "NN",   "NNS", "NNP", "NNPS", "PDT", "POS", "PRP",
    "PRP$", "RB", "RBR",  "RBS", "RP",  "SYM", "TO",  "UH",  "VB",
    "VBD", "VBG", "VBN",  "VBP", "VBZ", "WDT", "WP",  "WP$", "WRB",
    "#",   "$",   ".",    ",",   ":",   "-LRB-", "-RRB-", "``", "''"};

}  // namespace

std::span<const std::string_view> penn_tags() { return kPennTags; }

std::optional<int> tag_id(std::string_view tag) {
  auto it = std::find(kPennTags.begin(), kPennTags.end(), tag);
  if (it == kPennTags.end()) return std::nullopt;
  return static_cast<int>(it - kPennTags.begin());
}

bool is_penn_tag(std::string_view tag) { return tag_id(tag).has_value(); }

bool is_verb_tag(std::string_view tag) {
  return tag.starts_with("VB") || tag == "MD";
}

bool is_adjective_tag(std::string_view tag) {
  return tag == "JJ" || tag == "JJR" || tag == "JJS";
}

bool is_punctuation_tag(std::string_view tag) {
  static constexpr std::array<std::string_view, 9> kPunct = {
      "#", "$", ".", ",", ":", "-LRB-", "-RRB-", "``", "''"};
  return std::find(kPunct.begin(), kPunct.end(), tag) != kPunct.end();
}

}  // namespace clausecut
