#include "polymerdyn/potts.hpp"

#include <cmath>
#include <string>

namespace polymerdyn {

double PottsParams::r_geo() const {
  return tau() - std::log(12.0 * std::exp(2.0) * (q - 1));
}

double PottsParams::beta_threshold() const {
  return 3.0 / alpha * std::log(8.0 * std::exp(3.0) * (q - 1));
}

void validate(const PottsParams& p) {
  if (p.q < 2 || p.q > kMaxSpins) throw ValidationError("q must lie in [2, 64], got " + std::to_string(p.q));
  if (!(p.beta >= 0) || !std::isfinite(p.beta)) throw ValidationError("beta must be finite and nonnegative");
  if (!(p.alpha > 0) || !std::isfinite(p.alpha)) throw ValidationError("alpha must be finite and positive");
  if (p.r < 0 || p.r >= p.q) throw ValidationError("ground colour must lie in [0, q)");
}

std::size_t bichromatic_boundary(const SimpleGraph& g, const Polymer& p) {
  const VertexSet& s = p.vertices;
  std::size_t b = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (Vertex w : g.neighbors(s[i])) {
      auto it = std::lower_bound(s.begin(), s.end(), w);
      if (it == s.end() || *it != w) {
        ++b;
      } else if (s[i] < w && p.spins[static_cast<std::size_t>(it - s.begin())] != p.spins[i]) {
        ++b;
      }
    }
  }
  return b;
}

PolymerModel potts_polymer_model(const SimpleGraph& g, const PottsParams& params) {
  validate(params);
  PolymerModel m;
  m.host = &g;
  m.q = params.q;
  m.ground.assign(g.vertex_count(), std::uint64_t{1} << params.r);
  const std::size_t n = g.vertex_count();
  m.allowed = [n](const Polymer& p) { return 2 * p.vertices.size() < n; };
  const double beta = params.beta;
  const SimpleGraph* host = &g;
  m.log_weight = [beta, host](const Polymer& p) {
    return -beta * static_cast<double>(bichromatic_boundary(*host, p));
  };
  m.max_size = n == 0 ? 0 : (n - 1) / 2;
  m.decay = params.tau();
  return m;
}

Colouring config_to_colouring(std::size_t n, const PolymerConfiguration& config, int r) {
  Colouring sigma(n, static_cast<Spin>(r));
  for (const Polymer& p : config)
    for (std::size_t i = 0; i < p.vertices.size(); ++i) sigma[p.vertices[i]] = p.spins[i];
  return sigma;
}

std::size_t monochromatic_edges(const SimpleGraph& g, const Colouring& sigma) {
  std::size_t m = 0;
  for (const Edge& e : g.edges())
    if (sigma[e.u] == sigma[e.v]) ++m;
  return m;
}

int dominant_colour(const Colouring& sigma, int q) {
  std::vector<std::size_t> count(static_cast<std::size_t>(q), 0);
  for (Spin s : sigma) ++count[s];
  for (int c = 0; c < q; ++c)
    if (2 * count[static_cast<std::size_t>(c)] > sigma.size()) return c;
  return -1;
}

}  // namespace polymerdyn
