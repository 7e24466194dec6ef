#pragma once

#include <cstddef>
#include <vector>

#include "polymerdyn/graph.hpp"
#include "polymerdyn/polymer.hpp"

namespace polymerdyn {

using Colouring = std::vector<Spin>;

struct PottsParams {
  int q = 3;
  double beta = 1.0;
  double alpha = 1.0;
  int r = 0;  // ground colour

  double tau() const { return alpha * beta; }
  // tau - log(12 e^2 (q - 1)); the truncation rate when positive.
  double r_geo() const;
  // (3 / alpha) log(8 e^3 (q - 1)).
  double beta_threshold() const;
  bool in_regime() const { return beta >= beta_threshold(); }
};

// Throws ValidationError unless 2 <= q <= 64, beta >= 0, alpha > 0, r in [0, q).
void validate(const PottsParams& p);

// B_gamma: boundary edges plus internal edges that are bichromatic under sigma.
std::size_t bichromatic_boundary(const SimpleGraph& g, const Polymer& p);

// Ground set {r} everywhere, allowed iff |V| < n/2, log w = -beta B_gamma.
// The model keeps a reference to g.
PolymerModel potts_polymer_model(const SimpleGraph& g, const PottsParams& params);

// Vertices in a polymer take its spins, all others take r.
Colouring config_to_colouring(std::size_t n, const PolymerConfiguration& config, int r);

std::size_t monochromatic_edges(const SimpleGraph& g, const Colouring& sigma);

// The colour used by more than half of the vertices, or -1.
int dominant_colour(const Colouring& sigma, int q);

}  // namespace polymerdyn
