#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace clausecut {

struct Decoded {
  std::vector<int> states;
  double log_score = -std::numeric_limits<double>::infinity();
};

inline constexpr double kTieTolerance = 1e-12;

// Smallest index whose value lies within tolerance of the maximum.
template <class Value>
int argmax_first(int count, Value&& value, double& best) {
  best = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < count; ++s) best = std::max(best, value(s));
  const double slack = kTieTolerance * std::max(1.0, std::abs(best));
  for (int s = 0; s < count; ++s)
    if (value(s) >= best - slack) return s;
  return 0;
}

// First-order HMM decoding in the log domain.  Among all highest-scoring
// state paths it returns the lexicographically smallest by state id, so
// callers that number states in sorted order get a lexicographic tie-break.
//
// The maximisation runs right to left (best suffix score per state) and the
// path is then read off left to right, taking the smallest state that still
// reaches the optimum at each position.  Scores within kTieTolerance (relative)
// of the optimum count as equal, so mathematically tied paths are not split by
// rounding.
//
//   start(s)        log P(s at position 0)
//   trans(p, s)     log P(s | p)
//   emit(t, s)      log P(observation t | s)
template <class Start, class Trans, class Emit>
Decoded viterbi(int states, int length, Start&& start, Trans&& trans, Emit&& emit) {
  Decoded out;
  if (length == 0 || states == 0) return out;
  const double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> suffix(length, std::vector<double>(states, kNegInf));
  for (int s = 0; s < states; ++s) suffix[length - 1][s] = emit(length - 1, s);
  for (int t = length - 2; t >= 0; --t) {
    for (int s = 0; s < states; ++s) {
      double best = kNegInf;
      for (int n = 0; n < states; ++n) {
        double v = trans(s, n) + suffix[t + 1][n];
        if (v > best) best = v;
      }
      suffix[t][s] = emit(t, s) + best;
    }
  }

  out.states.resize(length);
  double best = kNegInf;
  int chosen = argmax_first(states, [&](int s) { return start(s) + suffix[0][s]; }, best);
  out.log_score = best;
  out.states[0] = chosen;
  for (int t = 1; t < length; ++t) {
    const int prev = chosen;
    double target;
    chosen = argmax_first(states, [&](int s) { return trans(prev, s) + suffix[t][s]; }, target);
    out.states[t] = chosen;
  }
  return out;
}

}  // namespace clausecut
