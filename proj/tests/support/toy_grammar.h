#pragma once

#include <cstdint>
#include <vector>

#include "clausecut/corpus.h"

namespace fixtures {

// Sentences of the form "<clause> <CC> <clause> ." built from a handful of
// clause templates, with gold governors, roles and NP chunks.  The first
// clause's verb depends on ".", the conjunction on that verb, and the second
// clause's verb on the conjunction.
std::vector<clausecut::AnnotatedSentence> conjoined_sentences(int count, std::uint64_t seed);

}  // namespace fixtures
