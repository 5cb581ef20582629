#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clausecut/chunker.h"
#include "clausecut/core.h"
#include "clausecut/errors.h"
#include "clausecut/segmenter.h"

namespace clausecut {

// A link-word rule could not be applied (no verb to attach to, empty segment
// before a prosodic comma, missing placeholder).
class SynthesisError : public InputError {
 public:
  using InputError::InputError;
};

enum class VerbForm { Base, Past, ThirdSingular, NonThirdSingular, PastParticiple, Continuous, Modal };
enum class VerbTense { Past, Present, Participle, Modal };

// Tag-derived verb classes: VB base, VBD past, VBZ 3sg present, VBP non-3sg
// present, VBN past participle, VBG continuous; tenses past {VBD}, present
// {VBZ, VBP, VB}, participle {VBN, VBG}.  MD forms its own class in both.
struct VerbDescriptor {
  int index = 0;
  VerbForm form = VerbForm::Base;
  VerbTense tense = VerbTense::Present;
};

std::optional<VerbDescriptor> describe_verb(const Token& token);

// Parse of one segment in sentence coordinates.
struct SegmentParse {
  Span span;
  std::vector<int> governors;     // per span token: sentence index or kRoot
  std::optional<int> head_verb;   // first root-governed verb

  // Token through which the segment is linked: the head verb, else the first
  // root-governed token; -1 for an empty segment.
  int anchor() const;
};

// `tree` is over the segment's tokens with positions local to the segment.
SegmentParse make_segment_parse(std::span<const Token> sentence, Span span,
                                const DependencyTree& tree);

// linkword.governor / linkword.dependent; nullopt stands for NULL.
struct LinkWordAttachment {
  std::optional<int> governor;
  std::optional<int> dependent;

  bool operator==(const LinkWordAttachment&) const = default;
};

// Sentence-level governor assignments made so far; kNoGovernor (-2) marks a
// token that has none yet.
using Assignments = std::vector<int>;

// Replaces the placeholder at `placeholder` with the group's tokens.  A single
// NP's head takes the placeholder's governor; in a group the NP heads are
// chained left to right from the first, and each connective depends on the
// head of the NP to its left.  Words that depended on the placeholder move to
// the group head.  `np_trees` holds one proper tree per span.
DependencyTree reattach_np(const DependencyTree& segment_tree, int placeholder,
                           const Placeholder& group, std::span<const DependencyTree> np_trees);

// Prosodic comma i: governor = last word of segment i, dependent NULL.
LinkWordAttachment attach_prosodic_comma(const SegmentedSentence& seg, int i);

// Clausal conjunction or clausal conjunctive comma i.  With an empty segment i
// the governor is the leftmost verb to the right and the dependent is NULL.
// Otherwise the dependent is the head verb of the nearest segment to the
// right; segments i-1 down to 0 are scanned and every head verb matching the
// dependent in form or tense overwrites the governor, so the leftmost match
// wins; with no match the governor is the rightmost verb of segment i.
LinkWordAttachment attach_clausal_conjunction(std::span<const Token> sentence,
                                              const SegmentedSentence& seg, int i,
                                              std::span<const SegmentParse> parses);

// How a subordinating preposition finds its governor.
enum class SubordinatorRule {
  Cascade,          // preceding verb, else preceding adjective, else the
                    // main clause (empty segment i), else head verb of segment i
  LeftSegmentHead,  // head verb of segment i
  MainClause,       // head verb of the head segment
};

// What happens to a link word whose attachment rule fails.
enum class RuleFailure {
  Throw,       // SynthesisError
  Neighbour,   // leaf on the preceding word (the following one at token 0)
  Unattached,  // left as an extra root, so the tree is reported defective
};

struct SynthesisConfig {
  // Per-wordform (lowercase) overrides; everything else uses Cascade.
  std::map<std::string, SubordinatorRule> subordinators;
  RuleFailure on_failure = RuleFailure::Throw;
  bool trace = false;
};

// Subordinating preposition i.  The dependent is the head verb of the segment
// to the right.
LinkWordAttachment attach_subordinating_preposition(std::span<const Token> sentence,
                                                    const SegmentedSentence& seg, int i,
                                                    std::span<const SegmentParse> parses,
                                                    const Assignments& assigned,
                                                    const SynthesisConfig& config = {});

struct HeadSegment {
  int segment = -1;
  int token = -1;
  bool fallback = false;
};

// First segment whose head verb is still ungoverned, is not VBG, and whose
// first word is not when/while/also/until/to.  Falls back to the first
// segment with a verb and an ungoverned anchor, then to the first non-empty
// segment.  nullopt when every segment is empty.
std::optional<HeadSegment> find_head_segment(std::span<const Token> sentence,
                                             const SegmentedSentence& seg,
                                             std::span<const SegmentParse> parses,
                                             const Assignments& assigned);

struct Arc {
  int dependent = 0;
  int governor = 0;
  bool operator==(const Arc&) const = default;
};

// Left to right, each non-empty segment whose anchor is still ungoverned is
// attached to the anchor of the nearest linked segment on its left, or to the
// head segment when there is none.
std::vector<Arc> chain_remaining_segments(const SegmentedSentence& seg,
                                          std::span<const SegmentParse> parses, int head_segment,
                                          const Assignments& assigned);

struct SynthesisResult {
  DependencyTree tree;
  ValidityReport validity;
  std::vector<LinkWordAttachment> attachments;  // one per link word
  std::optional<HeadSegment> head;
  std::vector<std::string> trace;
};

// Welds segment parses: prosodic commas, then clausal links, then
// subordinating prepositions, then the head segment (its head verb depends on
// linkword_n, which depends on the root) and segment chaining.
SynthesisResult synthesize_segments(std::span<const Token> sentence, const SegmentedSentence& seg,
                                    std::span<const SegmentParse> parses,
                                    const SynthesisConfig& config = {});

// Per-segment inputs to the full synthesis.
struct SegmentInput {
  NPExtraction extraction;
  DependencyTree compressed_tree;                       // over extraction.compressed
  std::map<int, std::vector<DependencyTree>> np_trees;  // placeholder -> one tree per span
};

// Re-attaches every NP, then welds the segments.
SynthesisResult synthesize(std::span<const Token> sentence, const SegmentedSentence& seg,
                           std::span<const SegmentInput> segments,
                           const SynthesisConfig& config = {});

}  // namespace clausecut
