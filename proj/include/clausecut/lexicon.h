#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>

#include "clausecut/core.h"

namespace clausecut {

// Wordform lists used for prepositions.  Entries are lowercase and the two
// sets are disjoint.
struct PrepositionLexicon {
  std::set<std::string> subordinating;
  std::set<std::string> group_forming;

  // although, if, while, that, when, until, unless, because, since, whereas,
  // before, after; group former "of".
  static PrepositionLexicon defaults();

  // Throws InputError on overlap or non-lowercase entries.
  void check() const;
  bool forms_groups(std::string_view wordform) const;

  void save(std::ostream& out) const;
  bool operator==(const PrepositionLexicon&) const = default;
};

// Subordinating when the lowercased form is listed, otherwise non-segmenting.
LinkWordRole classify_preposition(const PrepositionLexicon& lexicon, std::string_view wordform);

}  // namespace clausecut
