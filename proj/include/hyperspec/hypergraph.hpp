#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperspec/error.hpp"
#include "hyperspec/rational.hpp"
#include "hyperspec/stirling.hpp"

namespace hyperspec {

using VertexSet = std::vector<std::size_t>;  // sorted, no repeats

struct Edge {
  VertexSet support;
  Rational weight;
};

/// Unvalidated input; indices are 0-based and may be out of range.
struct RawEdge {
  std::vector<long long> vertices;
  Rational weight;
};

struct RawHypergraph {
  std::vector<std::string> vertex_labels;
  std::vector<RawEdge> edges;
};

/// Caps for the exhaustive searches. All of them are plain counts.
struct BruteForceLimits {
  std::size_t max_subset_vertices = 20;        // reducibility, irreducibility, bipartitions
  std::uint64_t max_colorings = 10'000'000;    // nabla^N
  std::uint64_t max_multisets_per_edge = 1'000'000;
  std::uint64_t max_row_tuples = 1'000'000;    // N^(nabla-1), duplicate re-verification
};

class WeightedHypergraph;
WeightedHypergraph validate(const RawHypergraph& raw);

/// A validated weighted hypergraph. Immutable once built.
class WeightedHypergraph {
 public:
  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<std::string>& vertex_labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Largest edge cardinality (the tensor order).
  unsigned order() const { return order_; }

  std::optional<std::size_t> find_edge(const VertexSet& support) const {
    auto it = index_.find(support);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Edge indices incident to vertex v, in edge order.
  const std::vector<std::size_t>& incident_edges(std::size_t v) const { return incidence_[v]; }

 private:
  friend WeightedHypergraph validate(const RawHypergraph& raw);
  WeightedHypergraph() = default;

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::map<VertexSet, std::size_t> index_;
  std::vector<std::vector<std::size_t>> incidence_;
  unsigned order_ = 0;
};

inline WeightedHypergraph validate(const RawHypergraph& raw) {
  WeightedHypergraph g;
  g.labels_ = raw.vertex_labels;
  const auto n = static_cast<long long>(raw.vertex_labels.size());
  if (raw.edges.empty()) {
    throw Error(ErrorCode::EmptyEdgeSet, "a hypergraph needs at least one edge");
  }
  g.incidence_.resize(raw.vertex_labels.size());
  for (std::size_t e = 0; e < raw.edges.size(); ++e) {
    const auto& edge = raw.edges[e];
    for (long long v : edge.vertices) {
      if (v < 0 || v >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "edge " + std::to_string(e + 1) + " has vertex index out of range");
      }
    }
    std::set<std::size_t> unique(edge.vertices.begin(), edge.vertices.end());
    if (unique.size() < 2) {
      throw Error(ErrorCode::EdgeTooSmall, "edge " + std::to_string(e + 1) + " has fewer than two vertices");
    }
    if (edge.weight <= 0) {
      throw Error(ErrorCode::NonPositiveWeight, "edge " + std::to_string(e + 1) + " has weight " + to_string(edge.weight));
    }
    VertexSet support(unique.begin(), unique.end());
    if (!g.index_.emplace(support, g.edges_.size()).second) {
      throw Error(ErrorCode::DuplicateEdge, "edge " + std::to_string(e + 1) + " repeats an earlier support");
    }
    for (auto v : support) g.incidence_[v].push_back(g.edges_.size());
    g.order_ = std::max<unsigned>(g.order_, static_cast<unsigned>(support.size()));
    g.edges_.push_back(Edge{std::move(support), edge.weight});
  }
  return g;
}

/// Convenience for literal test fixtures: 0-based supports, exact weights.
inline WeightedHypergraph make_hypergraph(std::size_t num_vertices,
                                          const std::vector<std::pair<std::vector<long long>, Rational>>& edges) {
  RawHypergraph raw;
  for (std::size_t v = 0; v < num_vertices; ++v) raw.vertex_labels.push_back("v" + std::to_string(v + 1));
  for (const auto& [support, weight] : edges) raw.edges.push_back(RawEdge{support, weight});
  return validate(raw);
}

// ---------------------------------------------------------------------------
// Degrees

struct DegreeProfile {
  std::vector<Rational> degrees;
  Rational delta_min;
  Rational delta_max;
  unsigned nabla = 0;
};

inline DegreeProfile degree_profile(const WeightedHypergraph& g) {
  DegreeProfile profile;
  profile.degrees.assign(g.num_vertices(), Rational(0));
  for (const auto& edge : g.edges()) {
    for (auto v : edge.support) profile.degrees[v] += edge.weight;
  }
  profile.delta_min = *std::min_element(profile.degrees.begin(), profile.degrees.end());
  profile.delta_max = *std::max_element(profile.degrees.begin(), profile.degrees.end());
  profile.nabla = g.order();
  return profile;
}

// ---------------------------------------------------------------------------
// Multisets with a prescribed support

/// Calls fn(a) for every vector a of `parts` positive integers summing to
/// `total`. Each such a is the multiplicity vector of a multiset of size
/// `total` whose support has `parts` elements.
inline void for_each_composition(unsigned total, unsigned parts,
                                 const std::function<void(std::span<const unsigned>)>& fn) {
  if (parts == 0 || parts > total) return;
  std::vector<unsigned> a(parts, 1);
  std::function<void(unsigned, unsigned)> fill = [&](unsigned pos, unsigned left) {
    if (pos + 1 == parts) {
      a[pos] = left;
      fn(a);
      return;
    }
    const unsigned remaining_parts = parts - pos - 1;
    for (unsigned v = 1; v + remaining_parts <= left; ++v) {
      a[pos] = v;
      fill(pos + 1, left - v);
    }
  };
  fill(0, total);
}

inline std::uint64_t composition_count(unsigned total, unsigned parts) {
  if (parts == 0 || parts > total) return 0;
  return binomial(total - 1, parts - 1).convert_to<std::uint64_t>();
}

// ---------------------------------------------------------------------------
// Connectivity and reducibility

/// Every edge has the maximum cardinality.
inline bool is_uniform(const WeightedHypergraph& g) {
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) { return e.support.size() == g.order(); });
}

inline bool is_connected(const WeightedHypergraph& g) {
  const auto n = g.num_vertices();
  if (n == 0) return true;
  std::vector<bool> seen_vertex(n, false), seen_edge(g.num_edges(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen_vertex[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    auto v = frontier.front();
    frontier.pop();
    for (auto e : g.incident_edges(v)) {
      if (seen_edge[e]) continue;
      seen_edge[e] = true;
      for (auto u : g.edges()[e].support) {
        if (!seen_vertex[u]) {
          seen_vertex[u] = true;
          ++reached;
          frontier.push(u);
        }
      }
    }
  }
  return reached == n;
}

struct Bipartition {
  VertexSet first;
  VertexSet second;
  bool operator==(const Bipartition&) const = default;
};

inline Bipartition bipartition_from_mask(std::uint64_t mask, std::size_t n) {
  Bipartition b;
  for (std::size_t v = 0; v < n; ++v) {
    ((mask >> v) & 1U ? b.first : b.second).push_back(v);
  }
  return b;
}

inline void require_subset_search(std::size_t n, const BruteForceLimits& limits, const char* what) {
  if (n > limits.max_subset_vertices || n >= 63) {
    throw Error(ErrorCode::TooLarge, std::string(what) + ": " + std::to_string(n) + " vertices exceed the subset-search cap");
  }
}

/// True when every edge meeting `first` meets it in at least two vertices.
inline bool is_reducing_bipartition(const WeightedHypergraph& g, const Bipartition& b) {
  if (b.first.empty() || b.second.empty()) return false;
  std::vector<bool> in_first(g.num_vertices(), false);
  for (auto v : b.first) in_first[v] = true;
  for (const auto& edge : g.edges()) {
    auto hits = std::count_if(edge.support.begin(), edge.support.end(), [&](auto v) { return in_first[v]; });
    if (hits == 1) return false;
  }
  return true;
}

/// Exhaustive search over vertex subsets in increasing bitmask order.
inline std::optional<Bipartition> is_reducible(const WeightedHypergraph& g, const BruteForceLimits& limits = {}) {
  const auto n = g.num_vertices();
  require_subset_search(n, limits, "is_reducible");
  std::vector<std::uint64_t> edge_masks;
  for (const auto& edge : g.edges()) {
    std::uint64_t m = 0;
    for (auto v : edge.support) m |= std::uint64_t{1} << v;
    edge_masks.push_back(m);
  }
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    bool ok = true;
    for (auto em : edge_masks) {
      if (std::popcount(em & mask) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return bipartition_from_mask(mask, n);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Duplicate vertices

namespace detail {

/// Adjacency-tensor entry of a hypergraph for a full index tuple.
inline Rational adjacency_entry(const WeightedHypergraph& g, std::span<const std::size_t> tuple) {
  VertexSet support(tuple.begin(), tuple.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  auto e = g.find_edge(support);
  if (!e) return 0;
  return g.edges()[*e].weight / Rational(row_count_N(static_cast<unsigned>(support.size()), g.order()));
}

/// Entrywise comparison of adjacency rows i and j over all N^(nabla-1) tails.
inline bool adjacency_rows_equal(const WeightedHypergraph& g, std::size_t i, std::size_t j) {
  const auto n = g.num_vertices();
  const unsigned k = g.order();
  std::vector<std::size_t> tuple_i(k, 0), tuple_j(k, 0);
  tuple_i[0] = i;
  tuple_j[0] = j;
  std::vector<std::size_t> tail(k - 1, 0);
  while (true) {
    std::copy(tail.begin(), tail.end(), tuple_i.begin() + 1);
    std::copy(tail.begin(), tail.end(), tuple_j.begin() + 1);
    if (adjacency_entry(g, tuple_i) != adjacency_entry(g, tuple_j)) return false;
    std::size_t pos = 0;
    while (pos < tail.size() && ++tail[pos] == n) tail[pos++] = 0;
    if (pos == tail.size()) return true;
  }
}

inline bool share_an_edge(const WeightedHypergraph& g, std::size_t i, std::size_t j) {
  for (auto e : g.incident_edges(i)) {
    const auto& s = g.edges()[e].support;
    if (std::binary_search(s.begin(), s.end(), j)) return true;
  }
  return false;
}

/// Combinatorial form of "rows i and j of the adjacency tensor coincide"
/// for vertices sharing no edge: every incident edge has full cardinality
/// nabla, and e -> e - {i} + {j} is a weight-preserving bijection.
inline bool is_duplicate_pair(const WeightedHypergraph& g, std::size_t i, std::size_t j) {
  if (i == j || share_an_edge(g, i, j)) return false;
  const auto& ei = g.incident_edges(i);
  const auto& ej = g.incident_edges(j);
  if (ei.size() != ej.size()) return false;
  for (auto e : ei) {
    const auto& edge = g.edges()[e];
    if (edge.support.size() != g.order()) return false;
    VertexSet image;
    for (auto v : edge.support) image.push_back(v == i ? j : v);
    std::sort(image.begin(), image.end());
    auto f = g.find_edge(image);
    if (!f || g.edges()[*f].weight != edge.weight) return false;
  }
  return true;
}

}  // namespace detail

/// Classes (size >= 2) of mutually duplicate vertices, each sorted, listed
/// by smallest member. When N^(nabla-1) is within the row-tuple cap every
/// pair is also checked entrywise against the adjacency rows.
inline std::vector<VertexSet> duplicate_classes(const WeightedHypergraph& g, const BruteForceLimits& limits = {}) {
  const auto n = g.num_vertices();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (detail::is_duplicate_pair(g, i, j)) parent[find(j)] = find(i);
    }
  }
  std::map<std::size_t, VertexSet> groups;
  for (std::size_t v = 0; v < n; ++v) groups[find(v)].push_back(v);

  bool verify_rows = true;
  {
    long double tuples = std::pow(static_cast<long double>(n), static_cast<long double>(g.order() - 1));
    verify_rows = tuples <= static_cast<long double>(limits.max_row_tuples);
  }
  std::vector<VertexSet> classes;
  for (auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        bool ok = detail::is_duplicate_pair(g, members[a], members[b]) &&
                  (!verify_rows || detail::adjacency_rows_equal(g, members[a], members[b]));
        if (!ok) {
          throw Error(ErrorCode::RangeError, "duplicate relation failed pairwise re-verification");
        }
      }
    }
    classes.push_back(members);
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

// ---------------------------------------------------------------------------
// Odd bipartitions and colorings

/// True when every size-nabla multiset supported exactly on an edge has an
/// odd number of members (with repetition) in `first`.
inline bool is_odd_bipartition(const WeightedHypergraph& g, const Bipartition& b) {
  const unsigned k = g.order();
  if (k % 2 != 0) return false;
  std::vector<bool> in_first(g.num_vertices(), false);
  for (auto v : b.first) in_first[v] = true;
  for (const auto& edge : g.edges()) {
    bool ok = true;
    for_each_composition(k, static_cast<unsigned>(edge.support.size()), [&](std::span<const unsigned> a) {
      if (!ok) return;
      unsigned count = 0;
      for (std::size_t p = 0; p < a.size(); ++p) {
        if (in_first[edge.support[p]]) count += a[p];
      }
      if (count % 2 == 0) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline std::optional<Bipartition> odd_bipartition(const WeightedHypergraph& g, const BruteForceLimits& limits = {}) {
  const unsigned k = g.order();
  if (k % 2 != 0) return std::nullopt;
  const auto n = g.num_vertices();
  require_subset_search(n, limits, "odd_bipartition");
  for (const auto& edge : g.edges()) {
    if (composition_count(k, static_cast<unsigned>(edge.support.size())) > limits.max_multisets_per_edge) {
      throw Error(ErrorCode::TooLarge, "odd_bipartition: multiset enumeration exceeds cap");
    }
  }
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    auto b = bipartition_from_mask(mask, n);
    if (is_odd_bipartition(g, b)) return b;
  }
  return std::nullopt;
}

/// phi takes values in {1, ..., nabla}.
using Coloring = std::vector<unsigned>;

inline bool is_coloring(const WeightedHypergraph& g, unsigned ell, const Coloring& phi) {
  const unsigned k = g.order();
  const unsigned target = k / ell;
  for (const auto& edge : g.edges()) {
    bool ok = true;
    for_each_composition(k, static_cast<unsigned>(edge.support.size()), [&](std::span<const unsigned> a) {
      if (!ok) return;
      unsigned sum = 0;
      for (std::size_t p = 0; p < a.size(); ++p) sum += a[p] * phi[edge.support[p]];
      if (sum % k != target % k) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

/// Exhaustive search for a (nabla, ell)-coloring, lexicographic with v1
/// most significant.
inline std::optional<Coloring> find_coloring(const WeightedHypergraph& g, unsigned ell,
                                             const BruteForceLimits& limits = {}) {
  const unsigned k = g.order();
  if (ell < 2 || k % ell != 0) {
    throw Error(ErrorCode::InvalidEll, "ell=" + std::to_string(ell) + " must be >= 2 and divide " + std::to_string(k));
  }
  const auto n = g.num_vertices();
  long double total = std::pow(static_cast<long double>(k), static_cast<long double>(n));
  if (total > static_cast<long double>(limits.max_colorings)) {
    throw Error(ErrorCode::TooLarge, "find_coloring: nabla^N exceeds cap");
  }
  Coloring phi(n, 1);
  while (true) {
    if (is_coloring(g, ell, phi)) return phi;
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++phi[pos] <= k) break;
      phi[pos] = 1;
      if (pos == 0) return std::nullopt;
    }
    if (n == 0) return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Constructions

inline WeightedHypergraph disjoint_union(const WeightedHypergraph& a, const WeightedHypergraph& b) {
  RawHypergraph raw;
  raw.vertex_labels = a.vertex_labels();
  raw.vertex_labels.insert(raw.vertex_labels.end(), b.vertex_labels().begin(), b.vertex_labels().end());
  const auto shift = static_cast<long long>(a.num_vertices());
  for (const auto& e : a.edges()) {
    raw.edges.push_back(RawEdge{{e.support.begin(), e.support.end()}, e.weight});
  }
  for (const auto& e : b.edges()) {
    RawEdge r{{}, e.weight};
    for (auto v : e.support) r.vertices.push_back(static_cast<long long>(v) + shift);
    raw.edges.push_back(std::move(r));
  }
  return validate(raw);
}

/// nabla-uniform unweighted hypergraph with nabla-1 central vertices shared
/// by all M edges and M peripheral vertices, one per edge.
inline WeightedHypergraph hyperflower(unsigned nabla, unsigned petals) {
  if (nabla < 2 || petals < 1) {
    throw Error(ErrorCode::RangeError, "hyperflower needs nabla >= 2 and M >= 1");
  }
  const std::size_t n = nabla - 1 + petals;
  RawHypergraph raw;
  for (std::size_t v = 0; v < n; ++v) raw.vertex_labels.push_back("v" + std::to_string(v + 1));
  for (std::size_t j = nabla - 1; j < n; ++j) {
    RawEdge e{{}, Rational(1)};
    for (std::size_t c = 0; c + 1 < nabla; ++c) e.vertices.push_back(static_cast<long long>(c));
    e.vertices.push_back(static_cast<long long>(j));
    raw.edges.push_back(std::move(e));
  }
  return validate(raw);
}

// ---------------------------------------------------------------------------

/// (nabla, M) when g is a hyperflower up to vertex relabeling: unit weights,
/// nabla >= 3, and M edges sharing the same nabla - 1 vertices, each with one
/// further vertex of its own that covers the rest.
inline std::optional<std::pair<unsigned, unsigned>> as_hyperflower(const WeightedHypergraph& g) {
  const unsigned k = g.order();
  if (k < 3 || !is_uniform(g)) return std::nullopt;
  VertexSet core = g.edges().front().support;
  for (const auto& e : g.edges()) {
    if (e.weight != 1) return std::nullopt;
    VertexSet both;
    std::set_intersection(core.begin(), core.end(), e.support.begin(), e.support.end(), std::back_inserter(both));
    core = std::move(both);
  }
  if (g.num_edges() == 1) core.pop_back();
  if (core.size() != k - 1 || g.num_vertices() != k - 1 + g.num_edges()) return std::nullopt;
  return std::pair{k, static_cast<unsigned>(g.num_edges())};
}

struct StructuralReport {
  bool connected = false;
  std::optional<Bipartition> reducible_witness;
  std::vector<VertexSet> duplicate_classes;
  std::optional<Bipartition> odd_bipartition;
  std::map<unsigned, std::optional<Coloring>> colorings;
};

inline StructuralReport structural_report(const WeightedHypergraph& g, const BruteForceLimits& limits = {}) {
  StructuralReport report;
  report.connected = is_connected(g);
  report.reducible_witness = is_reducible(g, limits);
  report.duplicate_classes = duplicate_classes(g, limits);
  report.odd_bipartition = odd_bipartition(g, limits);
  for (unsigned ell = 2; ell <= g.order(); ++ell) {
    if (g.order() % ell == 0) report.colorings[ell] = find_coloring(g, ell, limits);
  }
  return report;
}

}  // namespace hyperspec
