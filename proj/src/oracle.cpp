#include "polymerdyn/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace polymerdyn {

namespace {

void guard_colourings(const SimpleGraph& g, int q, double limit) {
  if (q < 1 || q > kMaxSpins) throw ValidationError("q must lie in [1, 64]");
  const double count = std::pow(static_cast<double>(q), static_cast<double>(g.vertex_count()));
  if (count > limit)
    throw ResourceError("exhaustive oracle refused: q^n = " + std::to_string(count) + " exceeds " +
                        std::to_string(limit));
}

// Odometer over all q^n colourings with the monochromatic-edge count and the
// per-colour vertex counts kept up to date incrementally. f returns false to stop.
template <class F>
void for_each_colouring(const SimpleGraph& g, int q, F&& f) {
  const std::size_t n = g.vertex_count();
  Colouring c(n, 0);
  std::size_t mono = g.edge_count();
  std::vector<std::size_t> counts(static_cast<std::size_t>(q), 0);
  counts[0] = n;
  while (true) {
    if (!f(static_cast<const Colouring&>(c), mono, static_cast<const std::vector<std::size_t>&>(counts))) return;
    std::size_t i = 0;
    for (; i < n; ++i) {
      const Spin old = c[i];
      const Spin next = static_cast<Spin>(old + 1 == q ? 0 : old + 1);
      for (Vertex w : g.neighbors(static_cast<Vertex>(i))) {
        if (c[w] == old) --mono;
        if (c[w] == next) ++mono;
      }
      --counts[old];
      ++counts[next];
      c[i] = next;
      if (next != 0) break;
    }
    if (i == n) return;
  }
}

double log_from_histogram(const std::vector<std::uint64_t>& hist, double beta) {
  std::vector<double> terms;
  for (std::size_t k = 0; k < hist.size(); ++k)
    if (hist[k] > 0) terms.push_back(std::log(static_cast<double>(hist[k])) + beta * static_cast<double>(k));
  return log_sum_exp(terms);
}

// Size of the largest connected set of vertices not coloured r.
std::size_t largest_defect(const SimpleGraph& g, const Colouring& c, int r, std::vector<char>& seen,
                           std::vector<Vertex>& stack) {
  const std::size_t n = g.vertex_count();
  seen.assign(n, 0);
  std::size_t best = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] || c[s] == r) continue;
    std::size_t size = 0;
    seen[s] = 1;
    stack.assign(1, static_cast<Vertex>(s));
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex w : g.neighbors(v))
        if (!seen[w] && c[w] != r) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    best = std::max(best, size);
  }
  return best;
}

}  // namespace

std::vector<std::uint64_t> polymer_image_histogram(const SimpleGraph& g, int q, int r) {
  guard_colourings(g, q, kColouringGuard);
  if (r < 0 || r >= q) throw ValidationError("ground colour must lie in [0, q)");
  std::vector<std::uint64_t> hist(g.edge_count() + 1, 0);
  const std::size_t n = g.vertex_count();
  std::vector<char> seen;
  std::vector<Vertex> stack;
  for_each_colouring(g, q, [&](const Colouring& c, std::size_t mono, const std::vector<std::size_t>&) {
    if (2 * largest_defect(g, c, r, seen, stack) < n) ++hist[mono];
    return true;
  });
  return hist;
}

double exact_potts_polymer_image_logZ(const SimpleGraph& g, int q, double beta, int r) {
  return log_from_histogram(polymer_image_histogram(g, q, r), beta);
}

std::vector<std::uint64_t> monochromatic_histogram(const SimpleGraph& g, int q, int r) {
  guard_colourings(g, q, kColouringGuard);
  if (r >= q) throw ValidationError("ground colour must lie in [0, q)");
  std::vector<std::uint64_t> hist(g.edge_count() + 1, 0);
  const std::size_t n = g.vertex_count();
  for_each_colouring(g, q, [&](const Colouring&, std::size_t mono, const std::vector<std::size_t>& counts) {
    if (r < 0 || 2 * counts[static_cast<std::size_t>(r)] > n) ++hist[mono];
    return true;
  });
  return hist;
}

double exact_potts_logZ(const SimpleGraph& g, int q, double beta) {
  return log_from_histogram(monochromatic_histogram(g, q), beta);
}

double exact_potts_restricted_logZ(const SimpleGraph& g, int q, double beta, int r) {
  if (r < 0) throw ValidationError("ground colour must lie in [0, q)");
  return log_from_histogram(monochromatic_histogram(g, q, r), beta);
}

Distribution<Colouring> exact_potts_distribution(const SimpleGraph& g, int q, double beta) {
  guard_colourings(g, q, kMaterializeGuard);
  const double log_z = exact_potts_logZ(g, q, beta);
  Distribution<Colouring> d;
  for_each_colouring(g, q, [&](const Colouring& c, std::size_t mono, const std::vector<std::size_t>&) {
    d.emplace_hint(d.end(), c, std::exp(beta * static_cast<double>(mono) - log_z));
    return true;
  });
  return d;
}

Colouring sample_potts_exact(const SimpleGraph& g, int q, double beta, Rng& rng) {
  const std::vector<std::uint64_t> hist = monochromatic_histogram(g, q);
  const double log_z = log_from_histogram(hist, beta);
  // Pick the monochromatic count, then a uniform colouring with that count.
  double u = rng.uniform();
  std::size_t level = hist.size();
  for (std::size_t k = 0; k < hist.size(); ++k) {
    if (hist[k] == 0) continue;
    level = k;
    const double p = std::exp(std::log(static_cast<double>(hist[k])) + beta * static_cast<double>(k) - log_z);
    if (u < p) break;
    u -= p;
  }
  std::uint64_t target = rng.below(hist[level]);
  Colouring out;
  for_each_colouring(g, q, [&](const Colouring& c, std::size_t mono, const std::vector<std::size_t>&) {
    if (mono != level) return true;
    if (target-- > 0) return true;
    out = c;
    return false;
  });
  return out;
}

PolymerConfiguration PolymerStateSpace::configuration(std::size_t i) const {
  std::vector<Polymer> ps;
  for (std::uint32_t j : configs[i]) ps.push_back(polymers[j]);
  return PolymerConfiguration(std::move(ps));
}

namespace {

struct Masks {
  std::vector<std::uint64_t> vertices;  // V
  std::vector<std::uint64_t> closed;    // V plus its neighbours
};

Masks polymer_masks(const SimpleGraph& g, const std::vector<Polymer>& ps) {
  Masks m;
  for (const Polymer& p : ps) {
    std::uint64_t v = 0, c = 0;
    for (Vertex x : p.vertices) {
      v |= std::uint64_t{1} << x;
      c |= std::uint64_t{1} << x;
      for (Vertex w : g.neighbors(x)) c |= std::uint64_t{1} << w;
    }
    m.vertices.push_back(v);
    m.closed.push_back(c);
  }
  return m;
}

}  // namespace

PolymerStateSpace enumerate_state_space(const PolymerModel& model, std::size_t max_configs) {
  const SimpleGraph& g = model.graph();
  if (g.vertex_count() > 64) throw ResourceError("state-space oracle needs n <= 64");
  PolymerStateSpace sp;
  sp.polymers = all_allowed_polymers(model).polymers;
  for (const Polymer& p : sp.polymers) sp.log_w.push_back(model.log_weight(p));
  const Masks masks = polymer_masks(g, sp.polymers);

  std::vector<std::uint32_t> chosen;
  auto rec = [&](auto&& self, std::uint32_t start, std::uint64_t blocked, double log_mass) -> void {
    if (sp.configs.size() >= max_configs)
      throw ResourceError("state-space oracle refused: more than " + std::to_string(max_configs) +
                          " configurations");
    sp.configs.push_back(chosen);
    sp.log_mass.push_back(log_mass);
    for (std::uint32_t i = start; i < sp.polymers.size(); ++i) {
      if (masks.vertices[i] & blocked) continue;
      chosen.push_back(i);
      self(self, i + 1, blocked | masks.closed[i], log_mass + sp.log_w[i]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0, 0.0);
  sp.log_Z = log_sum_exp(sp.log_mass);
  return sp;
}

double exact_polymer_logZ(const PolymerModel& model) {
  return enumerate_state_space(model).log_Z;
}

Distribution<PolymerConfiguration> exact_gibbs(const PolymerModel& model) {
  const PolymerStateSpace sp = enumerate_state_space(model);
  Distribution<PolymerConfiguration> d;
  for (std::size_t i = 0; i < sp.configs.size(); ++i)
    d.emplace(sp.configuration(i), std::exp(sp.log_mass[i] - sp.log_Z));
  return d;
}

Distribution<Polymer> exact_nu_e(const PolymerModel& model, Edge e) {
  const SimpleGraph& g = model.graph();
  if (e.u >= g.vertex_count() || e.v >= g.vertex_count() || !g.adjacent(e.u, e.v))
    throw ValidationError("exact_nu_e: not an edge of the host graph");
  const PolymerList list = polymers_on_edge(model, e, std::numeric_limits<std::size_t>::max());
  Distribution<Polymer> d;
  double total = 0;
  for (const Polymer& p : list.polymers) {
    const double w = std::exp(model.log_weight(p));
    total += w;
    d.emplace(p, w);
  }
  if (total > 1.0 + 1e-12)
    throw ConditionViolation("nu_e is not a distribution: weights on A(e) sum to " + std::to_string(total));
  d.emplace(Polymer{}, std::max(0.0, 1.0 - total));
  return d;
}

TransitionMatrix transition_matrix(const PolymerModel& model, std::size_t max_states) {
  const SimpleGraph& g = model.graph();
  TransitionMatrix t;
  t.space = enumerate_state_space(model, max_states);
  const PolymerStateSpace& sp = t.space;
  const std::size_t s = sp.configs.size();
  t.mu.resize(s);
  for (std::size_t i = 0; i < s; ++i) t.mu[i] = std::exp(sp.log_mass[i] - sp.log_Z);

  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  for (std::size_t i = 0; i < s; ++i) index.emplace(sp.configs[i], static_cast<std::uint32_t>(i));
  std::map<Polymer, std::uint32_t> polymer_index;
  for (std::size_t i = 0; i < sp.polymers.size(); ++i) polymer_index.emplace(sp.polymers[i], static_cast<std::uint32_t>(i));
  const Masks masks = polymer_masks(g, sp.polymers);

  // A(e) as polymer indices, with weights.
  const std::size_t m = g.edge_count();
  std::vector<std::vector<std::uint32_t>> on_edge(m);
  std::vector<double> empty_mass(m, 1.0);
  for (std::size_t k = 0; k < m; ++k) {
    const PolymerList list = polymers_on_edge(model, g.edges()[k], std::numeric_limits<std::size_t>::max());
    for (const Polymer& p : list.polymers) {
      const std::uint32_t j = polymer_index.at(p);
      on_edge[k].push_back(j);
      empty_mass[k] -= std::exp(sp.log_w[j]);
    }
    if (empty_mass[k] < -1e-12)
      throw ConditionViolation("nu_e is not a distribution on edge " + std::to_string(k));
    empty_mass[k] = std::max(0.0, empty_mass[k]);
  }

  t.rows.resize(s);
  for (std::size_t i = 0; i < s; ++i) {
    const auto& conf = sp.configs[i];
    std::map<std::uint32_t, double> row;
    if (m == 0) {
      row[static_cast<std::uint32_t>(i)] = 1.0;
    } else {
      std::uint64_t blocked = 0;
      for (std::uint32_t j : conf) blocked |= masks.closed[j];
      const double pe = 1.0 / static_cast<double>(m);
      for (std::size_t k = 0; k < m; ++k) {
        const Edge e = g.edges()[k];
        const std::uint64_t ends = (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v);
        // removal
        auto hit = std::find_if(conf.begin(), conf.end(), [&](std::uint32_t j) { return masks.vertices[j] & ends; });
        if (hit == conf.end()) {
          row[static_cast<std::uint32_t>(i)] += pe / 2;
        } else {
          std::vector<std::uint32_t> next(conf);
          next.erase(next.begin() + (hit - conf.begin()));
          row[index.at(next)] += pe / 2;
        }
        // insertion
        row[static_cast<std::uint32_t>(i)] += pe / 2 * empty_mass[k];
        for (std::uint32_t j : on_edge[k]) {
          const double p = pe / 2 * std::exp(sp.log_w[j]);
          if (masks.vertices[j] & blocked) {
            row[static_cast<std::uint32_t>(i)] += p;
          } else {
            std::vector<std::uint32_t> next(conf);
            next.insert(std::lower_bound(next.begin(), next.end(), j), j);
            row[index.at(next)] += p;
          }
        }
      }
    }
    t.rows[i].assign(row.begin(), row.end());
  }
  return t;
}

double stationarity_gap(const TransitionMatrix& t) {
  std::vector<double> v(t.mu.size(), 0.0);
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (const auto& [j, p] : t.rows[i]) v[j] += t.mu[i] * p;
  double gap = 0;
  for (std::size_t j = 0; j < v.size(); ++j) gap = std::max(gap, std::abs(v[j] - t.mu[j]));
  return gap;
}

double stationarity_gap(const PolymerModel& model) {
  return stationarity_gap(transition_matrix(model));
}

double detailed_balance_gap(const TransitionMatrix& t) {
  auto entry = [&](std::uint32_t i, std::uint32_t j) {
    const auto& row = t.rows[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const std::pair<std::uint32_t, double>& a, std::uint32_t c) { return a.first < c; });
    return it != row.end() && it->first == j ? it->second : 0.0;
  };
  double gap = 0;
  for (std::uint32_t i = 0; i < t.rows.size(); ++i)
    for (const auto& [j, p] : t.rows[i]) gap = std::max(gap, std::abs(t.mu[i] * p - t.mu[j] * entry(j, i)));
  return gap;
}

double row_sum_gap(const TransitionMatrix& t) {
  double gap = 0;
  for (const auto& row : t.rows) {
    double s = 0;
    for (const auto& [j, p] : row) s += p;
    gap = std::max(gap, std::abs(s - 1.0));
  }
  return gap;
}

}  // namespace polymerdyn
