#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clausecut {

struct Token {
  int index = 0;     // 0-based position in the sentence
  std::string form;
  std::string pos;   // Penn Treebank tag

  bool operator==(const Token&) const = default;
};

// Builds tokens from parallel form/tag lists, indexed from 0.
std::vector<Token> make_tokens(const std::vector<std::string>& forms,
                               const std::vector<std::string>& tags);

// Governor value meaning "attached to the artificial root".
inline constexpr int kRoot = -1;

enum class LinkWordRole {
  ProsodicComma,
  LogicalConjunctiveComma,
  ClausalConjunctiveComma,
  LogicalConjunction,
  ClausalConjunction,
  SubordinatingPreposition,
  NonSegmentingPreposition,
  NotLinkWord,
};

inline constexpr int kRoleCount = 8;

std::string_view role_name(LinkWordRole role);
std::optional<LinkWordRole> parse_role(std::string_view name);

bool is_comma_role(LinkWordRole role);
bool is_conjunction_role(LinkWordRole role);
bool is_preposition_role(LinkWordRole role);
// Whether `role` may be carried by a token tagged `pos`.
bool role_applies_to(LinkWordRole role, std::string_view pos);
// Prosodic and clausal conjunctive commas, clausal conjunctions and
// subordinating prepositions start a new segment.
bool is_segmenting(LinkWordRole role);
bool is_clausal(LinkWordRole role);

// Inclusive token range of a base noun phrase.
struct NPSpan {
  int start = 0;
  int end = 0;

  int size() const { return end - start + 1; }
  bool contains(int i) const { return i >= start && i <= end; }
  bool operator==(const NPSpan&) const = default;
  auto operator<=>(const NPSpan&) const = default;
};

// Governor assignment over a token sequence.  Governors are positions in
// `tokens()` or kRoot.  Defective assignments (cycles, several roots) are
// representable; validate_tree() reports them.
class DependencyTree {
 public:
  DependencyTree() = default;
  DependencyTree(std::vector<Token> tokens, std::vector<int> governors,
                 std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<Token>& tokens() const { return tokens_; }
  const Token& token(int i) const { return tokens_.at(i); }
  const std::vector<int>& governors() const { return governors_; }
  int governor(int i) const { return governors_.at(i); }
  // Optional per-token arc annotation; empty when absent.
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<int> roots() const;
  std::vector<int> dependents(int i) const;

  bool operator==(const DependencyTree&) const = default;

 private:
  std::vector<Token> tokens_;
  std::vector<int> governors_;
  std::vector<std::string> labels_;
};

struct ValidityReport {
  int root_count = 0;
  std::vector<std::vector<int>> cycles;  // each cycle sorted ascending
  bool connected = false;

  bool proper() const { return root_count == 1 && cycles.empty() && connected; }
  std::string describe() const;
};

// Exhaustive structural check.  `connected` means the token graph (ignoring
// the artificial root) is weakly connected.
ValidityReport validate_tree(const DependencyTree& tree);

}  // namespace clausecut
