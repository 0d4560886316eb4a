#include "meancycle/graph.hpp"

#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "meancycle/rng.hpp"

namespace meancycle {

std::string to_string(Orientation o) {
  return o == Orientation::directed ? "directed" : "undirected";
}

Orientation orientation_from_string(const std::string& s) {
  if (s == "directed") return Orientation::directed;
  if (s == "undirected") return Orientation::undirected;
  throw std::invalid_argument("unknown orientation: " + s);
}

GraphInstance sample_complete(int n, Orientation orientation, std::uint64_t seed) {
  const int min_n = orientation == Orientation::undirected ? 3 : 2;
  if (n < min_n)
    throw std::invalid_argument("sample_complete: n=" + std::to_string(n) + " below minimum " +
                                std::to_string(min_n) + " for " + to_string(orientation));
  GraphInstance g;
  g.n = n;
  g.orientation = orientation;
  g.seed = seed;
  g.w.assign(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::infinity());
  if (orientation == Orientation::directed) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          g.w[static_cast<std::size_t>(i) * n + j] =
              exp1_from_hash(hash_pair(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double x =
            exp1_from_hash(hash_pair(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
        g.w[static_cast<std::size_t>(i) * n + j] = x;
        g.w[static_cast<std::size_t>(j) * n + i] = x;
      }
  }
  return g;
}

void dump_csv(const GraphInstance& g, std::ostream& out) {
  out << g.n << ',' << to_string(g.orientation) << ',' << g.seed << '\n';
  char buf[64];
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    const int jstart = g.directed() ? 0 : i + 1;
    for (int j = jstart; j < n; ++j) {
      if (i == j) continue;
      std::snprintf(buf, sizeof buf, "%d,%d,%a\n", i, j, g.weight(i, j));
      out << buf;
    }
  }
}

GraphInstance load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty input");
  std::istringstream header(line);
  std::string field;
  GraphInstance g;
  if (!std::getline(header, field, ',')) throw std::runtime_error("load_csv: bad header");
  g.n = std::stoi(field);
  if (!std::getline(header, field, ',')) throw std::runtime_error("load_csv: bad header");
  g.orientation = orientation_from_string(field);
  if (!std::getline(header, field, ',')) throw std::runtime_error("load_csv: bad header");
  g.seed = std::stoull(field);
  if (g.n < (g.directed() ? 2 : 3)) throw std::runtime_error("load_csv: n below minimum");

  const int n = g.n;
  g.w.assign(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::infinity());
  std::size_t expected = g.directed() ? static_cast<std::size_t>(n) * (n - 1)
                                      : static_cast<std::size_t>(n) * (n - 1) / 2;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t p1 = line.find(',');
    std::size_t p2 = line.find(',', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
      throw std::runtime_error("load_csv: malformed row: " + line);
    const int i = std::stoi(line.substr(0, p1));
    const int j = std::stoi(line.substr(p1 + 1, p2 - p1 - 1));
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
      throw std::runtime_error("load_csv: vertex out of range: " + line);
    const double x = std::strtod(line.c_str() + p2 + 1, nullptr);
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::runtime_error("load_csv: nonpositive weight: " + line);
    g.w[static_cast<std::size_t>(i) * n + j] = x;
    if (!g.directed()) g.w[static_cast<std::size_t>(j) * n + i] = x;
    ++count;
  }
  if (count != expected)
    throw std::runtime_error("load_csv: expected " + std::to_string(expected) + " edges, got " +
                             std::to_string(count));
  return g;
}

} // namespace meancycle
