#include "polymerdyn/graph.hpp"

#include <numeric>
#include <set>
#include <string>

namespace polymerdyn {

VertexSet::VertexSet(std::vector<Vertex> vs) : v_(std::move(vs)) {
  std::sort(v_.begin(), v_.end());
  v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
}

VertexSet VertexSet::from_sorted(std::vector<Vertex> sorted) {
  VertexSet s;
  s.v_ = std::move(sorted);
  return s;
}

VertexSet VertexSet::with(Vertex x) const {
  std::vector<Vertex> out;
  out.reserve(v_.size() + 1);
  auto it = std::lower_bound(v_.begin(), v_.end(), x);
  out.insert(out.end(), v_.begin(), it);
  if (it == v_.end() || *it != x) out.push_back(x);
  out.insert(out.end(), it, v_.end());
  return from_sorted(std::move(out));
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = v_.begin();
  auto b = other.v_.begin();
  while (a != v_.end() && b != other.v_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

std::size_t VertexSetHash::operator()(const VertexSet& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Vertex v : s) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, std::vector<std::size_t>& offsets,
               std::vector<Vertex>& targets) {
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + deg[v];
  targets.assign(offsets[n], 0);
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    targets[fill[e.u]++] = e.v;
    targets[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
}

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

}  // namespace

SimpleGraph::SimpleGraph(std::size_t n, std::span<const Edge> edges) : n_(n) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n)
      throw ValidationError("edge " + edge_str(e) + " has an endpoint outside [0, " +
                            std::to_string(n) + ")");
    if (e.u == e.v) throw ValidationError("self-loop " + edge_str(e));
    edges_.push_back(Edge{std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  build_csr(n_, edges_, offsets_, targets_);
  for (std::size_t v = 0; v < n_; ++v) {
    auto nb = neighbors(static_cast<Vertex>(v));
    auto dup = std::adjacent_find(nb.begin(), nb.end());
    if (dup != nb.end())
      throw ValidationError("duplicate edge " +
                            edge_str(Edge{static_cast<Vertex>(v), *dup}));
  }
  if (n_ <= kDenseLimit) {
    words_per_row_ = (n_ + 63) / 64;
    bits_.assign(n_ * words_per_row_, 0);
    for (const Edge& e : edges_) {
      bits_[e.u * words_per_row_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
      bits_[e.v * words_per_row_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
    }
  }
}

bool SimpleGraph::adjacent(Vertex u, Vertex v) const {
  if (!bits_.empty() || n_ == 0)
    return n_ != 0 && ((bits_[u * words_per_row_ + v / 64] >> (v % 64)) & 1U);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::size_t> SimpleGraph::degrees() const {
  std::vector<std::size_t> d(n_);
  for (std::size_t v = 0; v < n_; ++v) d[v] = degree(static_cast<Vertex>(v));
  return d;
}

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_)
    if (e.u >= n || e.v >= n)
      throw ValidationError("edge " + edge_str(e) + " has an endpoint outside [0, " +
                            std::to_string(n) + ")");
  build_csr(n_, edges_, offsets_, targets_);
}

std::vector<std::size_t> MultiGraph::degrees() const {
  std::vector<std::size_t> d(n_);
  for (std::size_t v = 0; v < n_; ++v) d[v] = degree(static_cast<Vertex>(v));
  return d;
}

std::size_t MultiGraph::multiplicity(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  auto range = std::equal_range(nb.begin(), nb.end(), v);
  const auto c = static_cast<std::size_t>(range.second - range.first);
  return u == v ? c / 2 : c;
}

bool MultiGraph::is_simple() const {
  for (std::size_t v = 0; v < n_; ++v) {
    auto nb = neighbors(static_cast<Vertex>(v));
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
    if (std::binary_search(nb.begin(), nb.end(), static_cast<Vertex>(v))) return false;
  }
  return true;
}

SimpleGraph MultiGraph::to_simple() const {
  if (!is_simple()) throw ValidationError("multigraph has loops or parallel edges");
  return SimpleGraph(n_, edges_);
}

SimpleGraph induced_subgraph(const SimpleGraph& g, const VertexSet& s) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    auto iu = std::lower_bound(s.begin(), s.end(), e.u);
    auto iv = std::lower_bound(s.begin(), s.end(), e.v);
    if (iu == s.end() || *iu != e.u || iv == s.end() || *iv != e.v) continue;
    edges.push_back(Edge{static_cast<Vertex>(iu - s.begin()), static_cast<Vertex>(iv - s.begin())});
  }
  return SimpleGraph(s.size(), edges);
}

SimpleGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  return SimpleGraph(n, e);
}

SimpleGraph cycle_graph(std::size_t n) {
  if (n < 3) throw ValidationError("cycle_graph: need at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    e.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  return SimpleGraph(n, e);
}

SimpleGraph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
  return SimpleGraph(n, e);
}

SimpleGraph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, static_cast<Vertex>(i)});
  return SimpleGraph(leaves + 1, e);
}

std::vector<SimpleGraph> connected_graphs(std::size_t n) {
  if (n > 6) throw ResourceError("connected_graphs: only n <= 6 is supported");
  if (n == 0) return {};
  std::vector<Edge> pairs;
  std::vector<std::vector<int>> pair_index(n, std::vector<int>(n, -1));
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      pair_index[i][j] = pair_index[j][i] = static_cast<int>(pairs.size());
      pairs.push_back({i, j});
    }
  const std::size_t p = pairs.size();

  // For every permutation, where each pair bit goes.
  std::vector<std::vector<int>> perm_maps;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> map(p);
    for (std::size_t k = 0; k < p; ++k) map[k] = pair_index[perm[pairs[k].u]][perm[pairs[k].v]];
    perm_maps.push_back(std::move(map));
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto mask_connected = [&](std::uint32_t mask) {
    std::uint32_t reached = 1, frontier = 1;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::size_t k = 0; k < p; ++k) {
        if (!((mask >> k) & 1U)) continue;
        const std::uint32_t a = 1U << pairs[k].u, b = 1U << pairs[k].v;
        if ((frontier & a) && !(reached & b)) next |= b;
        if ((frontier & b) && !(reached & a)) next |= a;
      }
      reached |= next;
      frontier = next;
    }
    return reached == (1U << n) - 1;
  };

  std::set<std::uint32_t> canon;
  for (std::uint32_t mask = 0; mask < (1U << p); ++mask) {
    if (!mask_connected(mask)) continue;
    std::uint32_t best = mask;
    for (const auto& map : perm_maps) {
      std::uint32_t img = 0;
      for (std::size_t k = 0; k < p; ++k)
        if ((mask >> k) & 1U) img |= 1U << map[k];
      best = std::min(best, img);
    }
    canon.insert(best);
  }

  std::vector<SimpleGraph> out;
  for (std::uint32_t mask : canon) {
    std::vector<Edge> e;
    for (std::size_t k = 0; k < p; ++k)
      if ((mask >> k) & 1U) e.push_back(pairs[k]);
    out.emplace_back(n, e);
  }
  return out;
}

}  // namespace polymerdyn
