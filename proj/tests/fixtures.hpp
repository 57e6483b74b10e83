#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "hyperspec/hypergraph.hpp"

namespace fixtures {

using hyperspec::make_hypergraph;
using hyperspec::Rational;
using hyperspec::WeightedHypergraph;

// Vertex indices below are 0-based.

inline WeightedHypergraph ex123() { return make_hypergraph(3, {{{0, 1}, 1}, {{0, 1, 2}, 2}}); }

inline WeightedHypergraph k2() { return make_hypergraph(2, {{{0, 1}, 1}}); }

inline WeightedHypergraph triangle_graph() { return make_hypergraph(3, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 1}}); }

inline WeightedHypergraph cycle4() {
  return make_hypergraph(4, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}, {{0, 3}, 1}});
}

inline WeightedHypergraph path3() { return make_hypergraph(3, {{{0, 1}, 1}, {{1, 2}, 1}}); }

inline WeightedHypergraph two_disjoint_edges() { return make_hypergraph(4, {{{0, 1}, 1}, {{2, 3}, 1}}); }

inline WeightedHypergraph single_edge(int size) {
  std::vector<long long> e;
  for (int i = 0; i < size; ++i) e.push_back(i);
  return make_hypergraph(static_cast<std::size_t>(size), {{e, 1}});
}

inline WeightedHypergraph star(int leaves) {
  std::vector<std::pair<std::vector<long long>, Rational>> edges;
  for (int j = 1; j <= leaves; ++j) edges.push_back({{0, j}, 1});
  return make_hypergraph(static_cast<std::size_t>(leaves + 1), edges);
}

/// The protein interaction hypergraph: {1,2,3,4}, {1,5}, {3,5}.
inline WeightedHypergraph protein() {
  return make_hypergraph(5, {{{0, 1, 2, 3}, 1}, {{0, 4}, 1}, {{2, 4}, 1}});
}

struct RandomHypergraphOptions {
  std::size_t min_vertices = 3;
  std::size_t max_vertices = 7;
  unsigned max_order = 4;
  std::size_t max_edges = 6;
  bool rational_weights = true;
  bool force_connected = false;
};

/// Seeded random weighted hypergraph. Every vertex is covered by an edge;
/// with force_connected the edges are chained through a spanning path.
inline WeightedHypergraph random_hypergraph(std::uint64_t seed, const RandomHypergraphOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t n = uniform(opt.min_vertices, opt.max_vertices);
  const unsigned kmax = static_cast<unsigned>(std::min<std::size_t>(opt.max_order, n));
  std::set<std::vector<long long>> supports;

  auto random_support = [&](std::size_t size, std::optional<long long> must) {
    std::vector<long long> all(n);
    for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<long long>(v);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<long long> s(all.begin(), all.begin() + static_cast<long>(size));
    if (must && std::find(s.begin(), s.end(), *must) == s.end()) s[0] = *must;
    std::sort(s.begin(), s.end());
    return s;
  };

  if (opt.force_connected) {
    for (std::size_t v = 1; v < n; ++v) {
      auto size = uniform(2, kmax);
      std::vector<long long> s = random_support(size, static_cast<long long>(v));
      if (std::find(s.begin(), s.end(), static_cast<long long>(v - 1)) == s.end()) {
        s[s[0] == static_cast<long long>(v) ? 1 : 0] = static_cast<long long>(v - 1);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
      }
      supports.insert(s);
    }
  }
  const std::size_t extra = uniform(1, opt.max_edges);
  for (std::size_t e = 0; e < extra; ++e) supports.insert(random_support(uniform(2, kmax), std::nullopt));
  for (std::size_t v = 0; v < n; ++v) {
    bool covered = std::any_of(supports.begin(), supports.end(), [&](const auto& s) {
      return std::find(s.begin(), s.end(), static_cast<long long>(v)) != s.end();
    });
    if (!covered) supports.insert(random_support(uniform(2, kmax), static_cast<long long>(v)));
  }

  std::vector<std::pair<std::vector<long long>, Rational>> edges;
  for (const auto& s : supports) {
    Rational w = 1;
    if (opt.rational_weights) w = Rational(static_cast<long long>(uniform(1, 9)), static_cast<long long>(uniform(1, 5)));
    edges.push_back({s, w});
  }
  return make_hypergraph(n, edges);
}

}  // namespace fixtures
