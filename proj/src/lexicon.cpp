#include "clausecut/lexicon.h"

#include <ostream>

#include "clausecut/errors.h"
#include "clausecut/text_io.h"

namespace clausecut {

PrepositionLexicon PrepositionLexicon::defaults() {
  PrepositionLexicon lexicon;
  lexicon.subordinating = {"although", "if",     "while",   "that",   "when",   "until",
                           "unless",   "because", "since",  "whereas", "before", "after"};
  lexicon.group_forming = {"of"};
  return lexicon;
}

void PrepositionLexicon::check() const {
  for (const auto* set : {&subordinating, &group_forming})
    for (const auto& w : *set)
      if (w.empty() || w != to_lower(w)) throw InputError("lexicon entry '" + w + "' is not lowercase");
  for (const auto& w : subordinating)
    if (group_forming.count(w))
      throw InputError("lexicon entry '" + w + "' is both subordinating and group-forming");
}

bool PrepositionLexicon::forms_groups(std::string_view wordform) const {
  return group_forming.count(to_lower(wordform)) > 0;
}

void PrepositionLexicon::save(std::ostream& out) const {
  out << "subordinating\t" << subordinating.size();
  for (const auto& w : subordinating) out << '\t' << w;
  out << "\ngroup_forming\t" << group_forming.size();
  for (const auto& w : group_forming) out << '\t' << w;
  out << '\n';
}

LinkWordRole classify_preposition(const PrepositionLexicon& lexicon, std::string_view wordform) {
  return lexicon.subordinating.count(to_lower(wordform)) ? LinkWordRole::SubordinatingPreposition
                                                         : LinkWordRole::NonSegmentingPreposition;
}

}  // namespace clausecut
