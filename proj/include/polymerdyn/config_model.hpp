#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polymerdyn/graph.hpp"
#include "polymerdyn/rng.hpp"

namespace polymerdyn {

// Membership report for the degree-sequence class D_{n,d}: each condition is
// flagged on its own so that desk-scale sequences (where the max-degree
// condition cannot hold) can still be used.
struct DegreeSequenceReport {
  static constexpr double kRho = 1.0 / 50.0;

  std::size_t n = 0;
  double d = 0;
  long min_degree = 0;
  long max_degree = 0;
  double max_allowed = 0;  // n^rho
  long long degree_sum = 0;
  long long square_sum = 0;

  bool min_ok = false;     // (a) min x_i >= 3
  bool max_ok = false;     // (b) max x_i <= n^rho
  bool squares_ok = false; // (c) sum x_i^2 <= d n
  bool even_ok = false;    // (d) sum x_i even

  bool in_class() const { return min_ok && max_ok && squares_ok; }
};

DegreeSequenceReport validate_degree_sequence(std::span<const long> x, double d);

// Uniform random perfect matching of half-edges. Half-edges are taken in
// (vertex, slot) order and each is paired with a uniformly chosen remaining
// one. Throws ValidationError on an odd degree sum or negative entry.
MultiGraph sample_configuration_multigraph(std::span<const long> x, Rng& rng);

// Rejection sampling from the configuration model until the result is simple.
// Throws ResourceError after max_attempts failures. `attempts`, if given,
// receives the number of multigraphs drawn.
SimpleGraph sample_simple_graph(std::span<const long> x, Rng& rng, std::size_t max_attempts = 1000,
                                std::size_t* attempts = nullptr);

}  // namespace polymerdyn
