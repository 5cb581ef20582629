#include "clausecut/parser.h"

#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>

#include "clausecut/errors.h"
#include "clausecut/tagset.h"
#include "clausecut/text_io.h"

namespace clausecut {

namespace {

constexpr std::string_view kHeader = "clausecut-parser/1";

int tag_index(std::string_view pos) {
  auto id = tag_id(pos);
  if (!id) throw InputError("unknown POS tag '" + std::string(pos) + "'");
  return *id;
}

// True when candidate a should be preferred over b for the same dependent.
bool better(double score_a, int offset_a, double score_b, int offset_b) {
  if (score_a != score_b) return score_a > score_b;
  // offset 0 stands for the root, which loses every distance tie-break.
  int da = offset_a == 0 ? std::numeric_limits<int>::max() : std::abs(offset_a);
  int db = offset_b == 0 ? std::numeric_limits<int>::max() : std::abs(offset_b);
  if (da != db) return da < db;
  return offset_a < offset_b;
}

// Nodes whose governor chain passes through `node` (node included).
std::vector<bool> subtree_of(const std::vector<int>& gov, int node) {
  const int n = static_cast<int>(gov.size());
  std::vector<bool> inside(n, false);
  for (int v = 0; v < n; ++v) {
    int u = v;
    for (int steps = 0; u != kRoot && steps <= n; ++steps) {
      if (u == node) {
        inside[v] = true;
        break;
      }
      u = gov[u];
    }
  }
  return inside;
}

}  // namespace

std::string_view mode_name(ParserMode mode) {
  return mode == ParserMode::Segment ? "segment" : "np";
}

ParserMode parse_mode(std::string_view name) {
  if (name == "segment") return ParserMode::Segment;
  if (name == "np") return ParserMode::NounPhrase;
  throw InputError("unknown parser mode '" + std::string(name) + "' (expected segment or np)");
}

int offset_bucket(int offset) {
  if (offset == 0) throw std::invalid_argument("offset_bucket: zero offset");
  if (offset <= -8) return 0;
  if (offset <= -4) return 1;
  if (offset < 0) return 4 + offset + 1;  // -3 -> 2, -2 -> 3, -1 -> 4
  if (offset <= 3) return 4 + offset;     // 1 -> 5, 2 -> 6, 3 -> 7
  if (offset <= 7) return 8;
  return 9;
}

double ParserModel::attachment_prob(std::string_view dependent_pos, std::string_view governor_pos) const {
  return attach_.at(tag_index(dependent_pos)).at(tag_index(governor_pos));
}

double ParserModel::root_prob(std::string_view dependent_pos) const {
  return attach_.at(tag_index(dependent_pos)).back();
}

double ParserModel::arc_score(std::span<const Token> sentence, int dependent, int governor) const {
  const auto& dep = sentence[dependent].pos;
  if (governor == kRoot) return root_prob(dep);
  return attachment_prob(dep, sentence[governor].pos) * bucket_prob(offset_bucket(governor - dependent));
}

ParserModel train_parser(std::span<const DependencyTree> corpus, ParserMode mode, double add_k) {
  if (corpus.empty()) throw InputError("train_parser: empty corpus");
  if (add_k < 0) throw InputError("train_parser: add_k must be non-negative");
  const int n_tags = static_cast<int>(penn_tags().size());
  const int outcomes = n_tags + 1;
  std::vector<std::vector<double>> counts(n_tags, std::vector<double>(outcomes, 0.0));
  std::array<double, kBucketCount> bucket_counts{};

  for (size_t t = 0; t < corpus.size(); ++t) {
    const auto& tree = corpus[t];
    auto report = validate_tree(tree);
    if (!report.proper())
      throw InputError("train_parser: training tree " + std::to_string(t) + " is not a proper tree (" +
                       report.describe() + ")");
    for (int i = 0; i < tree.size(); ++i) {
      int dep = tag_index(tree.token(i).pos);
      int g = tree.governor(i);
      if (g == kRoot) {
        counts[dep][n_tags] += 1;
      } else {
        counts[dep][tag_index(tree.token(g).pos)] += 1;
        bucket_counts[offset_bucket(g - i)] += 1;
      }
    }
  }

  ParserModel model;
  model.mode_ = mode;
  model.add_k_ = add_k;
  for (auto& row : counts) {
    double total = 0;
    for (double c : row) total += c;
    double denominator = total + add_k * outcomes;
    for (double& c : row) c = denominator > 0 ? (c + add_k) / denominator : 1.0 / outcomes;
  }
  model.attach_ = std::move(counts);
  double total = 0;
  for (double c : bucket_counts) total += c;
  double denominator = total + add_k * kBucketCount;
  for (int b = 0; b < kBucketCount; ++b)
    model.buckets_[b] = denominator > 0 ? (bucket_counts[b] + add_k) / denominator : 1.0 / kBucketCount;
  return model;
}

std::vector<int> candidate_governors(std::span<const Token> sentence, int position) {
  const int n = static_cast<int>(sentence.size());
  if (position < 0 || position >= n) throw std::invalid_argument("candidate_governors: position out of range");
  std::vector<int> out;
  for (int j = 0; j < n; ++j)
    if (j != position) out.push_back(j);
  out.push_back(kRoot);
  return out;
}

DependencyTree select_governors(const ParserModel& model, std::span<const Token> sentence) {
  const int n = static_cast<int>(sentence.size());
  if (n == 0) throw InputError("select_governors: empty sentence");
  std::vector<int> governors(n);
  for (int i = 0; i < n; ++i) {
    int best = kRoot;
    double best_score = model.arc_score(sentence, i, kRoot);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = model.arc_score(sentence, i, j);
      if (better(s, j - i, best_score, best == kRoot ? 0 : best - i)) {
        best = j;
        best_score = s;
      }
    }
    governors[i] = best;
  }
  return DependencyTree({sentence.begin(), sentence.end()}, std::move(governors));
}

DependencyTree repair_tree(const DependencyTree& tree, const ParserModel& model) {
  if (validate_tree(tree).proper()) return tree;
  const int n = tree.size();
  const auto& tokens = tree.tokens();
  std::vector<int> gov = tree.governors();

  // Best candidate for `dep` outside its own subtree (never the root).
  auto reattach = [&](int dep) {
    auto inside = subtree_of(gov, dep);
    int best = -2;
    double best_score = 0;
    for (int j = 0; j < n; ++j) {
      if (inside[j]) continue;
      double s = model.arc_score(tokens, dep, j);
      if (best == -2 || better(s, j - dep, best_score, best - dep)) {
        best = j;
        best_score = s;
      }
    }
    return best;
  };

  int kept = -1;
  for (int i = 0; i < n; ++i)
    if (gov[i] == kRoot && (kept < 0 || model.root_prob(tokens[i].pos) > model.root_prob(tokens[kept].pos)))
      kept = i;

  while (true) {
    auto report = validate_tree(DependencyTree(tokens, gov));
    if (report.cycles.empty()) break;
    const auto& cycle = report.cycles.front();
    if (kept < 0) {
      // No root at all: the cycle member most likely to be a root becomes it.
      int pick = cycle.front();
      for (int v : cycle)
        if (model.root_prob(tokens[v].pos) > model.root_prob(tokens[pick].pos)) pick = v;
      gov[pick] = kRoot;
      kept = pick;
      continue;
    }
    int weakest = cycle.front();
    for (int v : cycle)
      if (model.arc_score(tokens, v, gov[v]) < model.arc_score(tokens, weakest, gov[weakest])) weakest = v;
    gov[weakest] = reattach(weakest);
  }

  for (int i = 0; i < n; ++i)
    if (gov[i] == kRoot && i != kept) gov[i] = kept;

  DependencyTree repaired(tokens, std::move(gov), tree.labels());
  if (!validate_tree(repaired).proper()) throw std::logic_error("repair_tree produced a defective tree");
  return repaired;
}

void ParserModel::save(std::ostream& out) const {
  out << kHeader << '\n';
  out << "mode\t" << mode_name(mode_) << '\n';
  out << "add_k\t" << format_double(add_k_) << '\n';
  out << "buckets";
  for (double v : buckets_) out << '\t' << format_double(v);
  out << "\noutcomes\t" << attach_.front().size();
  for (auto t : penn_tags()) out << '\t' << t;
  out << "\tROOT\n";
  for (size_t d = 0; d < attach_.size(); ++d) {
    out << "attach\t" << penn_tags()[d];
    for (double v : attach_[d]) out << '\t' << format_double(v);
    out << '\n';
  }
  out << "end\n";
}

ParserModel ParserModel::load(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.expect_header(kHeader);
  ParserModel model;
  try {
    model.mode_ = parse_mode(reader.expect("mode", 1)[0]);
  } catch (const InputError& e) {
    reader.fail(e.what());
  }
  model.add_k_ = reader.number(reader.expect("add_k", 1)[0]);
  auto buckets = reader.expect("buckets", kBucketCount);
  for (int b = 0; b < kBucketCount; ++b) model.buckets_[b] = reader.number(buckets[b]);
  const int n_tags = static_cast<int>(penn_tags().size());
  auto outcomes = reader.expect("outcomes", n_tags + 2);
  for (int t = 0; t < n_tags; ++t)
    if (outcomes[t + 1] != penn_tags()[t]) reader.fail("outcome order differs from the Penn tagset");
  for (int d = 0; d < n_tags; ++d) {
    auto fields = reader.expect("attach", n_tags + 2);
    if (fields[0] != penn_tags()[d]) reader.fail("unexpected attach row '" + fields[0] + "'");
    std::vector<double> row;
    for (int o = 0; o <= n_tags; ++o) row.push_back(reader.number(fields[o + 1]));
    model.attach_.push_back(std::move(row));
  }
  reader.expect("end", 0);
  return model;
}

}  // namespace clausecut
