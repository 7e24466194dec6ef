#include "polymerdyn/config_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polymerdyn {

DegreeSequenceReport validate_degree_sequence(std::span<const long> x, double d) {
  DegreeSequenceReport rep;
  rep.n = x.size();
  rep.d = d;
  rep.max_allowed = std::pow(static_cast<double>(rep.n), DegreeSequenceReport::kRho);
  if (x.empty()) return rep;
  rep.min_degree = *std::min_element(x.begin(), x.end());
  rep.max_degree = *std::max_element(x.begin(), x.end());
  for (long xi : x) {
    rep.degree_sum += xi;
    rep.square_sum += static_cast<long long>(xi) * xi;
  }
  rep.min_ok = rep.min_degree >= 3;
  rep.max_ok = static_cast<double>(rep.max_degree) <= rep.max_allowed;
  rep.squares_ok = static_cast<double>(rep.square_sum) <= d * static_cast<double>(rep.n);
  rep.even_ok = rep.degree_sum % 2 == 0;
  return rep;
}

MultiGraph sample_configuration_multigraph(std::span<const long> x, Rng& rng) {
  std::vector<Vertex> owner;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] < 0) throw ValidationError("degree sequence has a negative entry at " + std::to_string(v));
    owner.insert(owner.end(), static_cast<std::size_t>(x[v]), static_cast<Vertex>(v));
  }
  const std::size_t h = owner.size();
  if (h % 2 != 0) throw ValidationError("degree sequence has an odd sum (" + std::to_string(h) + ")");

  // pool holds the unpaired half-edges; pos[i] is i's index in pool.
  std::vector<std::size_t> pool(h), pos(h);
  for (std::size_t i = 0; i < h; ++i) pool[i] = pos[i] = i;
  auto take = [&](std::size_t idx) {
    const std::size_t he = pool[idx];
    pool[idx] = pool.back();
    pos[pool[idx]] = idx;
    pool.pop_back();
    return he;
  };

  std::vector<Edge> edges;
  edges.reserve(h / 2);
  std::vector<char> paired(h, 0);
  for (std::size_t i = 0; i < h; ++i) {
    if (paired[i]) continue;
    take(pos[i]);
    const std::size_t j = take(rng.below(pool.size()));
    paired[i] = paired[j] = 1;
    edges.push_back(Edge{owner[i], owner[j]});
  }
  return MultiGraph(x.size(), std::move(edges));
}

SimpleGraph sample_simple_graph(std::span<const long> x, Rng& rng, std::size_t max_attempts,
                                std::size_t* attempts) {
  for (std::size_t a = 1; a <= max_attempts; ++a) {
    MultiGraph h = sample_configuration_multigraph(x, rng);
    if (h.is_simple()) {
      if (attempts) *attempts = a;
      return h.to_simple();
    }
  }
  if (attempts) *attempts = max_attempts;
  throw ResourceError("no simple graph after " + std::to_string(max_attempts) +
                      " configuration-model draws");
}

}  // namespace polymerdyn
