#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace meancycle {

enum class Orientation { directed, undirected };

std::string to_string(Orientation o);
Orientation orientation_from_string(const std::string& s);

// Dense complete graph with positive real edge weights. Immutable after
// construction; safe to share across threads. Diagonal entries are unused
// and set to +infinity so accidental self-loop reads poison the result.
struct GraphInstance {
  int n = 0;
  Orientation orientation = Orientation::directed;
  std::uint64_t seed = 0;
  std::vector<double> w; // n*n row-major

  double weight(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
  bool directed() const { return orientation == Orientation::directed; }
};

// i.i.d. mean-1 exponential weights via inverse transform; the weight of
// edge (i,j) depends only on (seed, i, j). Undirected instances draw each
// unordered pair once and mirror it.
GraphInstance sample_complete(int n, Orientation orientation, std::uint64_t seed);

// Edge-list CSV with a one-line header "n,orientation,seed". Weights are
// written as hex floats so a dump/load round trip is bit exact.
void dump_csv(const GraphInstance& g, std::ostream& out);
GraphInstance load_csv(std::istream& in);

} // namespace meancycle
