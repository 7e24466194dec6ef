#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "polymerdyn/errors.hpp"

namespace polymerdyn {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sorted, duplicate-free list of vertices. The canonical form doubles as the
// deduplication key wherever vertex sets are collected.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs) : VertexSet(std::vector<Vertex>(vs)) {}
  explicit VertexSet(std::vector<Vertex> vs);

  // Caller guarantees `sorted` is strictly increasing.
  static VertexSet from_sorted(std::vector<Vertex> sorted);

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  Vertex operator[](std::size_t i) const { return v_[i]; }
  Vertex front() const { return v_.front(); }
  const std::vector<Vertex>& vertices() const { return v_; }

  bool contains(Vertex x) const { return std::binary_search(v_.begin(), v_.end(), x); }
  VertexSet with(Vertex x) const;
  bool intersects(const VertexSet& other) const;

  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> v_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept;
};

// Anything exposing vertex count, degree and a (possibly repeating) neighbour
// list. A loop at v appears twice in v's list so that |neighbors(v)| == degree(v).
template <class G>
concept AdjacencyGraph = requires(const G& g, Vertex v) {
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  { g.degree(v) } -> std::convertible_to<std::size_t>;
  { g.neighbors(v) } -> std::convertible_to<std::span<const Vertex>>;
};

// Simple undirected graph. Adjacency queries are O(1) through a packed bit
// matrix for n <= kDenseLimit and O(log deg) through sorted neighbour lists
// above that.
class SimpleGraph {
 public:
  static constexpr std::size_t kDenseLimit = std::size_t{1} << 15;

  SimpleGraph() = default;
  // Throws ValidationError on self-loops, duplicate edges or out-of-range ends.
  SimpleGraph(std::size_t n, std::span<const Edge> edges);
  SimpleGraph(std::size_t n, std::initializer_list<Edge> edges)
      : SimpleGraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  bool adjacent(Vertex u, Vertex v) const;
  std::vector<std::size_t> degrees() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;  // u < v, in input order
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;  // sorted per vertex
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Multigraph with loops and parallel edges; a loop adds 2 to its endpoint's degree.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::vector<std::size_t> degrees() const;
  // Number of edges joining u and v (loops when u == v).
  std::size_t multiplicity(Vertex u, Vertex v) const;
  bool is_simple() const;
  // Throws ValidationError unless is_simple().
  SimpleGraph to_simple() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

// ---------------------------------------------------------------------------
// Set primitives. S must be a subset of the vertex set of g.

template <AdjacencyGraph G>
std::size_t total_degree(const G& g, const VertexSet& s) {
  std::size_t sum = 0;
  for (Vertex v : s) sum += g.degree(v);
  return sum;
}

// Edges with both endpoints in S, with multiplicity; loops count once.
template <AdjacencyGraph G>
std::size_t internal_edge_count(const G& g, const VertexSet& s) {
  std::size_t twice = 0;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (s.contains(w)) ++twice;
  return twice / 2;
}

template <AdjacencyGraph G>
std::size_t boundary_edge_count(const G& g, const VertexSet& s) {
  std::size_t count = 0;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!s.contains(w)) ++count;
  return count;
}

template <AdjacencyGraph G>
VertexSet vertex_boundary(const G& g, const VertexSet& s) {
  std::vector<Vertex> out;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!s.contains(w)) out.push_back(w);
  return VertexSet(std::move(out));
}

template <AdjacencyGraph G>
bool is_connected(const G& g, const VertexSet& s) {
  if (s.empty()) throw ValidationError("is_connected: empty vertex set");
  std::vector<char> seen(s.size(), 0);
  std::vector<Vertex> stack{s.front()};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      auto it = std::lower_bound(s.begin(), s.end(), w);
      if (it == s.end() || *it != w) continue;
      auto idx = static_cast<std::size_t>(it - s.begin());
      if (seen[idx]) continue;
      seen[idx] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == s.size();
}

// |E(H[S])| - (|S| - 1) for connected S; throws ValidationError otherwise.
template <AdjacencyGraph G>
long tree_excess(const G& g, const VertexSet& s) {
  if (!is_connected(g, s)) throw ValidationError("tree_excess: vertex set is not connected");
  return static_cast<long>(internal_edge_count(g, s)) - (static_cast<long>(s.size()) - 1);
}

template <AdjacencyGraph G>
VertexSet all_vertices(const G& g) {
  std::vector<Vertex> vs(g.vertex_count());
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<Vertex>(i);
  return VertexSet::from_sorted(std::move(vs));
}

template <AdjacencyGraph G>
VertexSet complement(const G& g, const VertexSet& s) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!s.contains(static_cast<Vertex>(v))) out.push_back(static_cast<Vertex>(v));
  return VertexSet::from_sorted(std::move(out));
}

template <AdjacencyGraph G>
std::vector<VertexSet> connected_components(const G& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<Vertex> members;
    stack.assign(1, static_cast<Vertex>(start));
    comp[start] = id;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

template <AdjacencyGraph G>
bool is_connected_graph(const G& g) {
  return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

// Induced subgraph on `s`, relabelled 0..|s|-1 in increasing order of the
// original labels.
SimpleGraph induced_subgraph(const SimpleGraph& g, const VertexSet& s);

// ---------------------------------------------------------------------------
// Small named graphs.

SimpleGraph path_graph(std::size_t n);
SimpleGraph cycle_graph(std::size_t n);
SimpleGraph complete_graph(std::size_t n);
SimpleGraph star_graph(std::size_t leaves);  // centre is vertex 0

// One representative per isomorphism class of connected graphs on n vertices
// (n <= 6); exhaustive over labelled graphs, so intended for tests and oracles.
std::vector<SimpleGraph> connected_graphs(std::size_t n);

}  // namespace polymerdyn
