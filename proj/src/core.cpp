#include "clausecut/core.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "clausecut/tagset.h"

namespace clausecut {

namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleNames = {
    "ProsodicComma",      "LogicalConjunctiveComma", "ClausalConjunctiveComma",
    "LogicalConjunction", "ClausalConjunction",      "SubordinatingPreposition",
    "NonSegmentingPreposition", "NotLinkWord"};

}  // namespace

std::vector<Token> make_tokens(const std::vector<std::string>& forms,
                               const std::vector<std::string>& tags) {
  if (forms.size() != tags.size())
    throw std::invalid_argument("make_tokens: form/tag count mismatch");
  std::vector<Token> tokens;
  tokens.reserve(forms.size());
  for (size_t i = 0; i < forms.size(); ++i)
    tokens.push_back({static_cast<int>(i), forms[i], tags[i]});
  return tokens;
}

std::string_view role_name(LinkWordRole role) {
  return kRoleNames.at(static_cast<size_t>(role));
}

std::optional<LinkWordRole> parse_role(std::string_view name) {
  for (size_t i = 0; i < kRoleNames.size(); ++i)
    if (kRoleNames[i] == name) return static_cast<LinkWordRole>(i);
  return std::nullopt;
}

bool is_comma_role(LinkWordRole role) {
  return role == LinkWordRole::ProsodicComma ||
         role == LinkWordRole::LogicalConjunctiveComma ||
         role == LinkWordRole::ClausalConjunctiveComma;
}

bool is_conjunction_role(LinkWordRole role) {
  return role == LinkWordRole::LogicalConjunction ||
         role == LinkWordRole::ClausalConjunction;
}

bool is_preposition_role(LinkWordRole role) {
  return role == LinkWordRole::SubordinatingPreposition ||
         role == LinkWordRole::NonSegmentingPreposition;
}

bool role_applies_to(LinkWordRole role, std::string_view pos) {
  if (is_comma_role(role)) return pos == kCommaTag;
  if (is_conjunction_role(role)) return pos == kConjunctionTag;
  if (is_preposition_role(role)) return pos == kPrepositionTag;
  return true;
}

bool is_segmenting(LinkWordRole role) {
  return role == LinkWordRole::ProsodicComma ||
         role == LinkWordRole::ClausalConjunctiveComma ||
         role == LinkWordRole::ClausalConjunction ||
         role == LinkWordRole::SubordinatingPreposition;
}

bool is_clausal(LinkWordRole role) {
  return role == LinkWordRole::ClausalConjunctiveComma ||
         role == LinkWordRole::ClausalConjunction;
}

DependencyTree::DependencyTree(std::vector<Token> tokens, std::vector<int> governors,
                               std::vector<std::string> labels)
    : tokens_(std::move(tokens)), governors_(std::move(governors)), labels_(std::move(labels)) {
  if (tokens_.size() != governors_.size())
    throw std::invalid_argument("DependencyTree: token/governor count mismatch");
  if (!labels_.empty() && labels_.size() != tokens_.size())
    throw std::invalid_argument("DependencyTree: label count mismatch");
  const int n = size();
  for (int i = 0; i < n; ++i) {
    int g = governors_[i];
    if (g == i) throw std::invalid_argument("DependencyTree: token " + std::to_string(i) + " governs itself");
    if (g != kRoot && (g < 0 || g >= n))
      throw std::invalid_argument("DependencyTree: governor of token " + std::to_string(i) +
                                  " out of range: " + std::to_string(g));
  }
}

std::vector<int> DependencyTree::roots() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (governors_[i] == kRoot) out.push_back(i);
  return out;
}

std::vector<int> DependencyTree::dependents(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (governors_[j] == i) out.push_back(j);
  return out;
}

std::string ValidityReport::describe() const {
  if (proper()) return "proper";
  std::string out = "defective roots=" + std::to_string(root_count);
  out += " cycles=";
  if (cycles.empty()) out += "none";
  for (size_t c = 0; c < cycles.size(); ++c) {
    out += c ? ";" : "";
    for (size_t k = 0; k < cycles[c].size(); ++k)
      out += (k ? "," : "") + std::to_string(cycles[c][k]);
  }
  out += connected ? " connected" : " disconnected";
  return out;
}

ValidityReport validate_tree(const DependencyTree& tree) {
  ValidityReport report;
  const int n = tree.size();
  const auto& gov = tree.governors();
  report.root_count = static_cast<int>(std::count(gov.begin(), gov.end(), kRoot));

  // Each node has out-degree <= 1, so every cycle is found by walking
  // governor pointers and stopping at the first node seen on this walk.
  enum : char { kUnseen, kOnPath, kDone };
  std::vector<char> state(n, kUnseen);
  for (int start = 0; start < n; ++start) {
    if (state[start] != kUnseen) continue;
    std::vector<int> path;
    int v = start;
    while (v != kRoot && state[v] == kUnseen) {
      state[v] = kOnPath;
      path.push_back(v);
      v = gov[v];
    }
    if (v != kRoot && state[v] == kOnPath) {
      auto at = std::find(path.begin(), path.end(), v);
      std::vector<int> cycle(at, path.end());
      std::sort(cycle.begin(), cycle.end());
      report.cycles.push_back(std::move(cycle));
    }
    for (int p : path) state[p] = kDone;
  }
  std::sort(report.cycles.begin(), report.cycles.end());

  // Weak connectivity over token-to-token arcs.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (int i = 0; i < n; ++i) {
    if (gov[i] == kRoot) continue;
    int a = find(i), b = find(gov[i]);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  report.connected = n > 0 && components == 1;
  return report;
}

}  // namespace clausecut
