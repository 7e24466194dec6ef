#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "polymerdyn/errors.hpp"
#include "polymerdyn/polymer.hpp"
#include "polymerdyn/potts.hpp"
#include "polymerdyn/rng.hpp"

namespace polymerdyn {

// Outcome -> probability, keyed by canonical outcome.
template <class T>
using Distribution = std::map<T, double>;

template <class T>
Distribution<T> empirical_distribution(const std::vector<T>& samples) {
  Distribution<T> d;
  if (samples.empty()) return d;
  const double unit = 1.0 / static_cast<double>(samples.size());
  for (const T& s : samples) d[s] += unit;
  return d;
}

// Half the L1 distance. Outcomes absent from one side count as probability
// zero there. Throws ValidationError if either side is not normalised.
template <class T>
double tv_distance(const Distribution<T>& p, const Distribution<T>& q) {
  auto mass = [](const Distribution<T>& d) {
    double s = 0;
    for (const auto& [k, v] : d) {
      if (v < 0) throw ValidationError("tv_distance: negative probability");
      s += v;
    }
    return s;
  };
  if (std::abs(mass(p) - 1) > 1e-9 || std::abs(mass(q) - 1) > 1e-9)
    throw ValidationError("tv_distance: distributions must sum to 1");
  double sum = 0;
  auto a = p.begin();
  auto b = q.begin();
  while (a != p.end() || b != q.end()) {
    if (b == q.end() || (a != p.end() && a->first < b->first)) {
      sum += a->second;
      ++a;
    } else if (a == p.end() || b->first < a->first) {
      sum += b->second;
      ++b;
    } else {
      sum += std::abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return sum / 2;
}

// ---------------------------------------------------------------------------
// Potts colourings, by exhaustion over q^n colourings (q^n <= 1e8).

constexpr double kColouringGuard = 1e8;
constexpr double kMaterializeGuard = 1e6;

// hist[k] = number of colourings with k monochromatic edges. With r >= 0 only
// colourings giving colour r to more than n/2 vertices are counted.
std::vector<std::uint64_t> monochromatic_histogram(const SimpleGraph& g, int q, int r = -1);

double exact_potts_logZ(const SimpleGraph& g, int q, double beta);
// log Z^r: colourings with more than n/2 vertices coloured r.
double exact_potts_restricted_logZ(const SimpleGraph& g, int q, double beta, int r);
// Colourings in which every connected set of non-r vertices has fewer than
// n/2 vertices: the image of the Potts polymer configurations under
// config_to_colouring. This strictly contains the "more than n/2 coloured r"
// set whenever two small defects can together cover half the graph (P3 with
// colouring (c, r, c) is the smallest case).
std::vector<std::uint64_t> polymer_image_histogram(const SimpleGraph& g, int q, int r);
double exact_potts_polymer_image_logZ(const SimpleGraph& g, int q, double beta, int r);
// Materialised mu (q^n <= 1e6).
Distribution<Colouring> exact_potts_distribution(const SimpleGraph& g, int q, double beta);
// Exact draw from mu by two streaming passes.
Colouring sample_potts_exact(const SimpleGraph& g, int q, double beta, Rng& rng);

// ---------------------------------------------------------------------------
// Polymer models.

struct PolymerStateSpace {
  std::vector<Polymer> polymers;
  std::vector<double> log_w;
  std::vector<std::vector<std::uint32_t>> configs;  // sorted polymer indices
  std::vector<double> log_mass;                      // log prod w per config
  double log_Z = 0;

  PolymerConfiguration configuration(std::size_t i) const;
};

// Omega_G by backtracking over the allowed polymers. Throws ResourceError if
// there are more than max_configs configurations or more than 64 polymers
// would be needed for a single vertex bitmask (n <= 64 is required).
PolymerStateSpace enumerate_state_space(const PolymerModel& model, std::size_t max_configs = 1'000'000);

double exact_polymer_logZ(const PolymerModel& model);
Distribution<PolymerConfiguration> exact_gibbs(const PolymerModel& model);

// nu_e over A(e) plus the empty polymer. Throws ConditionViolation when the
// weights of A(e) sum to more than 1.
Distribution<Polymer> exact_nu_e(const PolymerModel& model, Edge e);

struct TransitionMatrix {
  PolymerStateSpace space;
  std::vector<double> mu;  // exact Gibbs probabilities, indexed like space.configs
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;  // sorted by column
};

// Exact transition matrix of the edge dynamics (|Omega| <= max_states).
TransitionMatrix transition_matrix(const PolymerModel& model, std::size_t max_states = 10'000);

// max_j |(mu P)_j - mu_j|
double stationarity_gap(const TransitionMatrix& t);
double stationarity_gap(const PolymerModel& model);
// max_{i,j} |mu_i P_ij - mu_j P_ji|
double detailed_balance_gap(const TransitionMatrix& t);
// max_i |sum_j P_ij - 1|
double row_sum_gap(const TransitionMatrix& t);

}  // namespace polymerdyn
