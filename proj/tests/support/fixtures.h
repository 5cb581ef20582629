#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clausecut/corpus.h"
#include "clausecut/pipeline.h"
#include "clausecut/segmenter.h"
#include "clausecut/synthesizer.h"

namespace fixtures {

std::filesystem::path source_path(const std::string& relative);
const std::vector<clausecut::AnnotatedSentence>& toy_corpus();
// Trained once on the toy corpus with default options.
const clausecut::ModelBundle& toy_models();

// Sentence whose token forms, joined by spaces, equal `text`.
const clausecut::AnnotatedSentence& toy_sentence(const std::string& text);

std::string text_of(const clausecut::AnnotatedSentence& s);

// Gold tree restricted to each segment of the gold segmentation: governors
// outside the segment become roots.
std::vector<clausecut::SegmentParse> gold_segment_parses(const clausecut::AnnotatedSentence& s,
                                                         const clausecut::SegmentedSentence& seg);

// Token list from "form/TAG form/TAG ..." text.
std::vector<clausecut::Token> tagged(const std::string& text);

std::filesystem::path temp_dir(const std::string& name);

}  // namespace fixtures
