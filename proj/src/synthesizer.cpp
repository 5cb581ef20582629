#include "clausecut/synthesizer.h"

#include <algorithm>
#include <array>

#include "clausecut/corpus.h"
#include "clausecut/tagset.h"
#include "clausecut/text_io.h"

namespace clausecut {

namespace {

std::string describe_token(std::span<const Token> sentence, std::optional<int> i) {
  if (!i) return "NULL";
  if (*i == kRoot) return "ROOT";
  if (*i >= static_cast<int>(sentence.size())) return std::to_string(*i) + ":.";
  return std::to_string(*i) + ":" + sentence[*i].form;
}

std::optional<int> leftmost_verb(std::span<const Token> sentence, Span span) {
  for (int t = span.begin; t < span.end; ++t)
    if (is_verb_tag(sentence[t].pos)) return t;
  return std::nullopt;
}

std::optional<int> rightmost_verb(std::span<const Token> sentence, Span span) {
  for (int t = span.end - 1; t >= span.begin; --t)
    if (is_verb_tag(sentence[t].pos)) return t;
  return std::nullopt;
}

void check_index(const SegmentedSentence& seg, int i, std::span<const SegmentParse> parses) {
  if (i < 0 || i + 1 >= seg.size())
    throw std::invalid_argument("link word index " + std::to_string(i) + " out of range");
  if (!parses.empty() && static_cast<int>(parses.size()) != seg.size())
    throw std::invalid_argument("one segment parse per segment required");
}

bool placeholder_token(const Token& t) {
  return t.pos == kPlaceholderTag && t.form.starts_with("NP#");
}

}  // namespace

std::optional<VerbDescriptor> describe_verb(const Token& token) {
  struct Entry {
    std::string_view tag;
    VerbForm form;
    VerbTense tense;
  };
  static constexpr std::array<Entry, 7> kTable = {{
      {"VB", VerbForm::Base, VerbTense::Present},
      {"VBD", VerbForm::Past, VerbTense::Past},
      {"VBZ", VerbForm::ThirdSingular, VerbTense::Present},
      {"VBP", VerbForm::NonThirdSingular, VerbTense::Present},
      {"VBN", VerbForm::PastParticiple, VerbTense::Participle},
      {"VBG", VerbForm::Continuous, VerbTense::Participle},
      {"MD", VerbForm::Modal, VerbTense::Modal},
  }};
  for (const auto& e : kTable)
    if (token.pos == e.tag) return VerbDescriptor{token.index, e.form, e.tense};
  return std::nullopt;
}

int SegmentParse::anchor() const {
  if (span.empty()) return -1;
  if (head_verb) return *head_verb;
  for (int k = 0; k < span.size(); ++k)
    if (governors[k] == kRoot) return span.begin + k;
  return span.begin;
}

SegmentParse make_segment_parse(std::span<const Token> sentence, Span span,
                                const DependencyTree& tree) {
  if (tree.size() != span.size())
    throw std::invalid_argument("make_segment_parse: tree size does not match the segment");
  SegmentParse parse;
  parse.span = span;
  for (int k = 0; k < tree.size(); ++k) {
    int g = tree.governor(k);
    parse.governors.push_back(g == kRoot ? kRoot : span.begin + g);
    if (g == kRoot && !parse.head_verb && is_verb_tag(sentence[span.begin + k].pos))
      parse.head_verb = span.begin + k;
  }
  return parse;
}

DependencyTree reattach_np(const DependencyTree& segment_tree, int placeholder,
                           const Placeholder& group, std::span<const DependencyTree> np_trees) {
  const int n = segment_tree.size();
  if (placeholder < 0 || placeholder >= n || !placeholder_token(segment_tree.token(placeholder)))
    throw SynthesisError("reattach_np: no placeholder at position " + std::to_string(placeholder));
  const auto& spans = group.group.spans;
  if (np_trees.size() != spans.size())
    throw SynthesisError("reattach_np: expected " + std::to_string(spans.size()) + " NP trees, got " +
                         std::to_string(np_trees.size()));
  const int base = group.group.begin();
  const int width = static_cast<int>(group.tokens.size());
  if (width != group.group.end() - base + 1)
    throw SynthesisError("reattach_np: placeholder tokens do not cover the group");

  auto map_outer = [&](int q) { return q < placeholder ? q : q + width - 1; };
  auto map_inner = [&](int original) { return placeholder + (original - base); };

  std::vector<int> heads;
  for (size_t k = 0; k < spans.size(); ++k) {
    const auto& tree = np_trees[k];
    if (tree.size() != spans[k].size() || !validate_tree(tree).proper())
      throw SynthesisError("reattach_np: NP tree " + std::to_string(k) + " is not a proper tree over its span");
    heads.push_back(map_inner(spans[k].start + tree.roots().front()));
  }

  std::vector<Token> tokens;
  std::vector<int> governors;
  for (int q = 0; q < n; ++q) {
    if (q != placeholder) {
      tokens.push_back(segment_tree.token(q));
      int g = segment_tree.governor(q);
      governors.push_back(g == kRoot ? kRoot : g == placeholder ? heads.front() : map_outer(g));
      continue;
    }
    int outer = segment_tree.governor(q);
    for (const auto& t : group.tokens) tokens.push_back(t);
    governors.resize(governors.size() + width, kRoot);
    for (size_t k = 0; k < spans.size(); ++k) {
      const auto& tree = np_trees[k];
      for (int local = 0; local < tree.size(); ++local) {
        int at = map_inner(spans[k].start + local);
        int g = tree.governor(local);
        governors[at] = g == kRoot ? kRoot : map_inner(spans[k].start + g);
      }
    }
    governors[heads.front()] = outer == kRoot ? kRoot : map_outer(outer);
    for (size_t k = 1; k < heads.size(); ++k) governors[heads[k]] = heads[k - 1];
    for (size_t c = 0; c < group.group.connectives.size(); ++c)
      governors[map_inner(group.group.connectives[c])] = heads[c];
  }
  return DependencyTree(std::move(tokens), std::move(governors));
}

LinkWordAttachment attach_prosodic_comma(const SegmentedSentence& seg, int i) {
  check_index(seg, i, {});
  if (seg.linkwords[i].role != LinkWordRole::ProsodicComma)
    throw std::invalid_argument("attach_prosodic_comma: link word is not a prosodic comma");
  if (seg.segments[i].empty())
    throw SynthesisError("prosodic comma at token " + std::to_string(seg.linkwords[i].index) +
                         " follows an empty segment");
  return {seg.segments[i].end - 1, std::nullopt};
}

LinkWordAttachment attach_clausal_conjunction(std::span<const Token> sentence,
                                              const SegmentedSentence& seg, int i,
                                              std::span<const SegmentParse> parses) {
  check_index(seg, i, parses);
  if (!is_clausal(seg.linkwords[i].role))
    throw std::invalid_argument("attach_clausal_conjunction: link word is not clausal");
  const int lw = seg.linkwords[i].index;

  if (seg.segments[i].empty()) {
    for (int j = i + 1; j < seg.size(); ++j)
      if (auto v = leftmost_verb(sentence, seg.segments[j])) return {*v, std::nullopt};
    throw SynthesisError("clausal link word at token " + std::to_string(lw) + " has no verb to its right");
  }

  std::optional<int> dependent;
  for (int j = i + 1; j < seg.size() && !dependent; ++j)
    if (!seg.segments[j].empty() && parses[j].head_verb) dependent = parses[j].head_verb;
  if (!dependent)
    throw SynthesisError("clausal link word at token " + std::to_string(lw) + " has no verb to its right");

  auto target = describe_verb(sentence[*dependent]);
  std::optional<int> governor;
  for (int j = i - 1; j >= 0; --j) {
    if (!parses[j].head_verb) continue;
    auto candidate = describe_verb(sentence[*parses[j].head_verb]);
    if (candidate->form == target->form || candidate->tense == target->tense)
      governor = parses[j].head_verb;
  }
  if (!governor) governor = rightmost_verb(sentence, seg.segments[i]);
  if (!governor) governor = parses[i].anchor();
  return {governor, dependent};
}

LinkWordAttachment attach_subordinating_preposition(std::span<const Token> sentence,
                                                    const SegmentedSentence& seg, int i,
                                                    std::span<const SegmentParse> parses,
                                                    const Assignments& assigned,
                                                    const SynthesisConfig& config) {
  check_index(seg, i, parses);
  if (seg.linkwords[i].role != LinkWordRole::SubordinatingPreposition)
    throw std::invalid_argument("attach_subordinating_preposition: link word is not subordinating");
  const int lw = seg.linkwords[i].index;

  std::optional<int> dependent;
  for (int j = i + 1; j < seg.size(); ++j) {
    if (seg.segments[j].empty()) continue;
    dependent = parses[j].head_verb;
    break;
  }
  if (!dependent)
    throw SynthesisError("subordinating preposition at token " + std::to_string(lw) +
                         " has no verb in the segment to its right");

  SubordinatorRule rule = SubordinatorRule::Cascade;
  if (auto it = config.subordinators.find(to_lower(sentence[lw].form)); it != config.subordinators.end())
    rule = it->second;

  auto main_clause = [&]() -> std::optional<int> {
    Assignments with_dependent = assigned;
    with_dependent[*dependent] = lw;
    auto head = find_head_segment(sentence, seg, parses, with_dependent);
    if (!head) return std::nullopt;
    return head->token;
  };
  auto left_head = [&]() -> std::optional<int> {
    int a = parses[i].anchor();
    return a < 0 ? std::nullopt : std::optional<int>(a);
  };

  std::optional<int> governor;
  if (rule == SubordinatorRule::MainClause) {
    governor = main_clause();
  } else if (rule == SubordinatorRule::LeftSegmentHead) {
    governor = left_head();
  } else {
    const int before = lw - 1;
    if (before >= 0 && is_verb_tag(sentence[before].pos)) governor = before;
    else if (before >= 0 && is_adjective_tag(sentence[before].pos)) governor = before;
    else if (seg.segments[i].empty()) governor = main_clause();
    else governor = left_head();
  }
  if (!governor || *governor == *dependent)
    throw SynthesisError("subordinating preposition at token " + std::to_string(lw) + " has no governor");
  return {governor, dependent};
}

std::optional<HeadSegment> find_head_segment(std::span<const Token> sentence,
                                             const SegmentedSentence& seg,
                                             std::span<const SegmentParse> parses,
                                             const Assignments& assigned) {
  static const std::array<std::string, 5> kExcluded = {"when", "while", "also", "until", "to"};
  for (int j = 0; j < seg.size(); ++j) {
    const auto& p = parses[j];
    if (seg.segments[j].empty() || !p.head_verb) continue;
    if (assigned[*p.head_verb] != kNoGovernor) continue;
    if (sentence[*p.head_verb].pos == "VBG") continue;
    auto first = to_lower(sentence[seg.segments[j].begin].form);
    if (std::find(kExcluded.begin(), kExcluded.end(), first) != kExcluded.end()) continue;
    return HeadSegment{j, *p.head_verb, false};
  }
  for (int j = 0; j < seg.size(); ++j) {
    if (seg.segments[j].empty() || !leftmost_verb(sentence, seg.segments[j])) continue;
    int token = parses[j].anchor();
    if (assigned[token] == kNoGovernor) return HeadSegment{j, token, true};
  }
  for (int j = 0; j < seg.size(); ++j)
    if (!seg.segments[j].empty()) return HeadSegment{j, parses[j].anchor(), true};
  return std::nullopt;
}

std::vector<Arc> chain_remaining_segments(const SegmentedSentence& seg,
                                          std::span<const SegmentParse> parses, int head_segment,
                                          const Assignments& assigned) {
  std::vector<bool> linked(seg.size(), false);
  for (int j = 0; j < seg.size(); ++j)
    linked[j] = !seg.segments[j].empty() && (j == head_segment || assigned[parses[j].anchor()] != kNoGovernor);
  std::vector<Arc> arcs;
  for (int j = 0; j < seg.size(); ++j) {
    if (seg.segments[j].empty() || linked[j]) continue;
    int target = head_segment;
    for (int k = j - 1; k >= 0; --k)
      if (linked[k]) {
        target = k;
        break;
      }
    arcs.push_back({parses[j].anchor(), parses[target].anchor()});
    linked[j] = true;
  }
  return arcs;
}

SynthesisResult synthesize_segments(std::span<const Token> sentence, const SegmentedSentence& seg,
                                    std::span<const SegmentParse> parses,
                                    const SynthesisConfig& config) {
  const int n = static_cast<int>(sentence.size());
  if (static_cast<int>(parses.size()) != seg.size() || seg.token_count != n)
    throw std::invalid_argument("synthesize: segmentation does not match the inputs");
  SynthesisResult result;
  result.attachments.resize(seg.size());
  Assignments assigned(n, kNoGovernor);
  for (const auto& p : parses)
    for (int k = 0; k < p.span.size(); ++k)
      if (p.governors[k] != kRoot) assigned[p.span.begin + k] = p.governors[k];

  auto log = [&](std::string line) {
    if (config.trace) result.trace.push_back(std::move(line));
  };
  auto apply = [&](int i, const char* rule, auto&& compute) {
    const int lw = seg.linkwords[i].index;
    LinkWordAttachment a;
    try {
      a = compute();
    } catch (const SynthesisError& e) {
      if (config.on_failure == RuleFailure::Throw) throw;
      int neighbour = lw > 0 ? lw - 1 : (lw + 1 < n ? lw + 1 : kRoot);
      a = {config.on_failure == RuleFailure::Neighbour ? neighbour : kRoot, std::nullopt};
      log(std::string(rule) + "\t" + describe_token(sentence, lw) + "\tfallback\t" + e.what());
    }
    assigned[lw] = *a.governor;
    if (a.dependent) assigned[*a.dependent] = lw;
    result.attachments[i] = a;
    log(std::string(rule) + "\t" + describe_token(sentence, lw) + "\tgovernor=" +
        describe_token(sentence, a.governor) + "\tdependent=" + describe_token(sentence, a.dependent));
  };

  const int last = seg.size() - 1;
  for (int i = 0; i < last; ++i)
    if (seg.linkwords[i].role == LinkWordRole::ProsodicComma)
      apply(i, "prosodic-comma", [&] { return attach_prosodic_comma(seg, i); });
  for (int i = 0; i < last; ++i)
    if (is_clausal(seg.linkwords[i].role))
      apply(i, "clausal-link", [&] { return attach_clausal_conjunction(sentence, seg, i, parses); });
  for (int i = 0; i < last; ++i)
    if (seg.linkwords[i].role == LinkWordRole::SubordinatingPreposition)
      apply(i, "subordinating-preposition", [&] {
        return attach_subordinating_preposition(sentence, seg, i, parses, assigned, config);
      });

  const auto& final_lw = seg.final_linkword();
  result.head = find_head_segment(sentence, seg, parses, assigned);
  if (result.head) {
    assigned[result.head->token] = final_lw.synthetic ? kRoot : final_lw.index;
    log("head-segment\tsegment=" + std::to_string(result.head->segment) + "\thead=" +
        describe_token(sentence, result.head->token) + (result.head->fallback ? "\tfallback" : ""));
    for (const auto& arc : chain_remaining_segments(seg, parses, result.head->segment, assigned)) {
      assigned[arc.dependent] = arc.governor;
      log("chain\t" + describe_token(sentence, arc.dependent) + "\tgovernor=" +
          describe_token(sentence, arc.governor));
    }
  }
  if (!final_lw.synthetic) assigned[final_lw.index] = kRoot;
  result.attachments[last] = {final_lw.synthetic ? std::nullopt : std::optional<int>(kRoot),
                              result.head ? std::optional<int>(result.head->token) : std::nullopt};

  // Secondary roots inside a defective segment parse stay roots and are
  // reported by the validity check.
  for (int& g : assigned)
    if (g == kNoGovernor) g = kRoot;
  result.tree = DependencyTree({sentence.begin(), sentence.end()}, std::move(assigned));
  result.validity = validate_tree(result.tree);
  return result;
}

SynthesisResult synthesize(std::span<const Token> sentence, const SegmentedSentence& seg,
                           std::span<const SegmentInput> segments, const SynthesisConfig& config) {
  if (static_cast<int>(segments.size()) != seg.size())
    throw std::invalid_argument("synthesize: one input per segment required");
  std::vector<SegmentParse> parses;
  std::vector<std::string> np_trace;
  for (int s = 0; s < seg.size(); ++s) {
    const Span span = seg.segments[s];
    const auto& input = segments[s];
    if (span.empty()) {
      parses.push_back({span, {}, std::nullopt});
      continue;
    }
    DependencyTree tree = input.compressed_tree;
    // Right to left so earlier placeholder positions stay valid.
    for (auto it = input.extraction.placeholders.rbegin(); it != input.extraction.placeholders.rend(); ++it) {
      auto trees = input.np_trees.find(it->first);
      if (trees == input.np_trees.end())
        throw SynthesisError("no NP parse for placeholder " + std::to_string(it->first));
      tree = reattach_np(tree, it->first, it->second, trees->second);
      if (config.trace)
        np_trace.push_back("np-reattach\tsegment=" + std::to_string(s) + "\tplaceholder=" +
                           std::to_string(it->first) + "\tspans=" +
                           std::to_string(it->second.group.spans.size()));
    }
    if (tree.size() != span.size()) throw SynthesisError("expanded segment does not match its span");
    parses.push_back(make_segment_parse(sentence, span, tree));
  }
  auto result = synthesize_segments(sentence, seg, parses, config);
  result.trace.insert(result.trace.begin(), np_trace.begin(), np_trace.end());
  return result;
}

}  // namespace clausecut
