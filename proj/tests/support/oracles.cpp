#include "support/oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "support/random_corpus.h"

namespace fixtures {

using namespace clausecut;

namespace {

double log_p(double p) { return p > 0 ? std::log(p) : -INFINITY; }

// Walks every path of `n` states over `states` values in lexicographic order
// and returns the smallest one scoring within 1e-9 of the best, or an empty
// vector when every path scores -inf.
template <class Score>
std::vector<int> best_path(int states, int n, Score&& score) {
  std::vector<int> path(n, 0), winner;
  std::vector<std::pair<double, std::vector<int>>> all;
  double best = -INFINITY;
  while (true) {
    double s = score(path);
    all.emplace_back(s, path);
    best = std::max(best, s);
    int k = n - 1;
    while (k >= 0 && ++path[k] == states) path[k--] = 0;
    if (k < 0) break;
  }
  if (best == -INFINITY) return {};
  for (const auto& [s, p] : all)
    if (s >= best - 1e-9 && (winner.empty() || p < winner)) winner = p;
  return winner;
}

std::vector<Bio> random_bio(std::mt19937_64& rng, int n, bool with_nps) {
  std::vector<Bio> tags;
  for (int i = 0; i < n; ++i) {
    Bio t = with_nps ? static_cast<Bio>(uniform(rng, 0, 2)) : Bio::O;
    if (t == Bio::I && (i == 0 || tags.back() == Bio::O)) t = Bio::B;
    tags.push_back(t);
  }
  return tags;
}

bool well_formed(const std::vector<Bio>& tags) {
  for (size_t i = 0; i < tags.size(); ++i)
    if (tags[i] == Bio::I && (i == 0 || tags[i - 1] == Bio::O)) return false;
  return true;
}

const std::vector<std::string> kParserTags = {"DT", "NN", "VBZ", "JJ", "IN", ".", "PRP"};

std::pair<int, int> tie_key(int dependent, int governor) {
  if (governor == kRoot) return {1 << 30, 0};
  return {std::abs(governor - dependent), governor - dependent};
}

}  // namespace

std::vector<int> brute_force_tags(const TaggerModel& m, const std::vector<std::string>& words) {
  const int n = static_cast<int>(words.size());
  auto winner = best_path(m.tag_count(), n, [&](const std::vector<int>& path) {
    double score = 0;
    for (int i = 0; i < n; ++i) {
      score += log_p(m.transition_prob(i == 0 ? TaggerModel::kStart : path[i - 1], path[i]));
      score += log_p(m.emission_prob(path[i], words[i]));
    }
    return score;
  });
  return winner.empty() ? std::vector<int>(n, 0) : winner;
}

std::vector<Bio> brute_force_bio(const ChunkerModel& m, const std::vector<Token>& tokens) {
  const int n = static_cast<int>(tokens.size());
  auto winner = best_path(3, n, [&](const std::vector<int>& path) {
    double score = 0;
    for (int i = 0; i < n; ++i) {
      score += log_p(m.transition_prob(i == 0 ? ChunkerModel::kStart : path[i - 1], static_cast<Bio>(path[i])));
      score += log_p(m.emission_prob(static_cast<Bio>(path[i]), tokens[i].pos));
    }
    return score;
  });
  if (winner.empty()) return std::vector<Bio>(n, Bio::O);
  std::vector<Bio> out;
  for (int s : winner) out.push_back(static_cast<Bio>(s));
  return out;
}

std::vector<int> brute_force_governors(const ParserModel& m, const std::vector<Token>& t) {
  const int n = static_cast<int>(t.size());
  std::vector<int> gov(n, kRoot), best_gov;
  double best = -1;
  std::function<void(int, double)> rec = [&](int i, double product) {
    if (i == n) {
      bool take = product > best;
      if (!take && product == best) {
        for (int k = 0; k < n; ++k) {
          if (gov[k] == best_gov[k]) continue;
          take = tie_key(k, gov[k]) < tie_key(k, best_gov[k]);
          break;
        }
      }
      if (take) {
        best = product;
        best_gov = gov;
      }
      return;
    }
    for (int g = -1; g < n; ++g) {
      if (g == i) continue;
      gov[i] = g;
      rec(i + 1, product * m.arc_score(t, i, g));
    }
  };
  rec(0, 1.0);
  return best_gov;
}

OracleRun tagger_oracle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OracleRun run;
  for (int model_no = 0; model_no < 60; ++model_no) {
    auto corpus = random_tagged_corpus(rng, uniform(rng, 1, 12));
    auto model = train_tagger(corpus.sentences, 0.1);
    for (int k = 0; k < 20; ++k) {
      auto words = random_words(rng, corpus.words, uniform(rng, 1, 5));
      auto expected = brute_force_tags(model, words);
      std::vector<int> ids;
      for (const auto& t : tag(model, words))
        ids.push_back(static_cast<int>(std::find(model.tags().begin(), model.tags().end(), t) - model.tags().begin()));
      ++run.cases;
      if (ids != expected) ++run.mismatches;
    }
  }
  return run;
}

OracleRun chunker_oracle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OracleRun run;
  for (int model_no = 0; model_no < 60; ++model_no) {
    auto corpus = random_tagged_corpus(rng, uniform(rng, 1, 10));
    // One model in six never sees an NP.
    const bool with_nps = model_no % 6 != 0;
    for (auto& s : corpus.sentences) s.chunks = random_bio(rng, s.size(), with_nps);
    auto model = train_chunker(corpus.sentences, 0.1);
    for (int k = 0; k < 20; ++k) {
      std::vector<Token> tokens;
      const int n = uniform(rng, 1, 6);
      for (int i = 0; i < n; ++i)
        tokens.push_back({i, "x", corpus.tags[uniform(rng, 0, static_cast<int>(corpus.tags.size()) - 1)]});
      auto got = decode_bio(model, tokens);
      ++run.cases;
      if (got != brute_force_bio(model, tokens)) ++run.mismatches;
      else if (!with_nps && got != std::vector<Bio>(n, Bio::O)) ++run.mismatches;
      if (!well_formed(got)) ++run.ill_formed;
    }
  }
  return run;
}

OracleRun parser_oracle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OracleRun run;
  for (int model_no = 0; model_no < 100; ++model_no) {
    std::vector<DependencyTree> trees;
    const int count = uniform(rng, 1, 8);
    for (int k = 0; k < count; ++k) trees.push_back(random_tree(rng, kParserTags, uniform(rng, 1, 7)));
    auto model = train_parser(trees, ParserMode::Segment, 0.1);
    for (int k = 0; k < 12; ++k) {
      std::vector<Token> tokens;
      const int n = uniform(rng, 1, 5);
      for (int i = 0; i < n; ++i)
        tokens.push_back({i, "x", kParserTags[uniform(rng, 0, static_cast<int>(kParserTags.size()) - 1)]});
      ++run.cases;
      if (select_governors(model, tokens).governors() != brute_force_governors(model, tokens)) ++run.mismatches;
    }
  }
  return run;
}

}  // namespace fixtures
