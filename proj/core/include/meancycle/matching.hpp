#pragma once

#include <vector>

namespace meancycle {

struct MatchingResult {
  std::vector<int> mate;  // mate[i] = partner of vertex i
  double weight = 0.0;    // sum of w[i][mate[i]] over matched pairs
};

struct IntMatchingResult {
  std::vector<int> mate;
  long long weight = 0;
};

// Minimum-weight perfect matching on a complete graph of even order.
// Exact in integer arithmetic; |w[i][j]| must stay below 2^41.
// Throws std::invalid_argument on odd order, asymmetry, or w[i][i] != 0.
IntMatchingResult min_weight_perfect_matching(const std::vector<std::vector<long long>>& w);

// Double-weight front end: weights are snapped to a 2^40-step grid of the
// largest magnitude and matched exactly on that grid, so the result is
// optimal within (order/2 + 1) * max|w| * 2^-40 of the true optimum.
// weight is recomputed from the input matrix. Throws std::invalid_argument
// on odd order, asymmetry, or non-finite entries.
MatchingResult min_weight_perfect_matching(const std::vector<std::vector<double>>& w);

} // namespace meancycle
