#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "clausecut/core.h"

namespace clausecut {

enum class ParserMode { Segment, NounPhrase };

std::string_view mode_name(ParserMode mode);  // "segment" / "np"
ParserMode parse_mode(std::string_view name);  // throws InputError

// Signed governor-minus-dependent offsets fall into ten buckets:
// <=-8, -7..-4, -3, -2, -1, +1, +2, +3, +4..+7, >=+8.
inline constexpr int kBucketCount = 10;
int offset_bucket(int offset);

// Factored attachment model: a word at dependent POS d attaches to a governor
// at POS g with score P(g | d) * P(bucket(offset)), or to the root with score
// P(ROOT | d).  The governor outcome distribution (Penn tags plus ROOT) and
// the bucket distribution are add-k smoothed relative frequencies.
class ParserModel {
 public:
  ParserMode mode() const { return mode_; }
  double add_k() const { return add_k_; }

  double attachment_prob(std::string_view dependent_pos, std::string_view governor_pos) const;
  double root_prob(std::string_view dependent_pos) const;
  double bucket_prob(int bucket) const { return buckets_.at(bucket); }
  // Score of dependent -> governor (governor may be kRoot).
  double arc_score(std::span<const Token> sentence, int dependent, int governor) const;

  void save(std::ostream& out) const;
  static ParserModel load(std::istream& in, const std::string& source = "<stream>");
  bool operator==(const ParserModel&) const = default;

 private:
  friend ParserModel train_parser(std::span<const DependencyTree>, ParserMode, double);

  ParserMode mode_ = ParserMode::Segment;
  double add_k_ = 0.1;
  std::vector<std::vector<double>> attach_;  // dependent tag x (governor tag..., ROOT)
  std::array<double, kBucketCount> buckets_{};
};

// Throws InputError for an empty corpus or a tree that is not proper (the
// message names the tree).
ParserModel train_parser(std::span<const DependencyTree> corpus, ParserMode mode,
                         double add_k = 0.1);

// Every other position in ascending order, then kRoot.
std::vector<int> candidate_governors(std::span<const Token> sentence, int position);

// Each word independently takes its best candidate.  Ties go to the smaller
// absolute offset, then to the left; the root ranks after every word.  The
// result may contain cycles or several roots.
DependencyTree select_governors(const ParserModel& model, std::span<const Token> sentence);

// Makes any governor assignment proper: keeps the best-scoring root, breaks
// each cycle at its lowest-scoring arc by re-attaching that dependent to its
// best candidate outside its own subtree, and attaches the remaining roots to
// the kept one.  Proper trees come back unchanged.
DependencyTree repair_tree(const DependencyTree& tree, const ParserModel& model);

}  // namespace clausecut
