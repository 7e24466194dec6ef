#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "polymerdyn/graph.hpp"
#include "polymerdyn/log_value.hpp"

namespace polymerdyn {

using Spin = std::uint8_t;
constexpr int kMaxSpins = 64;

// gamma = (V, sigma). spins[i] is the spin of vertices[i]. The default value
// (no vertices) is used as the empty outcome of single-edge samplers.
struct Polymer {
  VertexSet vertices;
  std::vector<Spin> spins;

  bool empty() const { return vertices.empty(); }
  friend auto operator<=>(const Polymer&, const Polymer&) = default;
};

// A set of pairwise compatible polymers, kept sorted by minimum vertex.
class PolymerConfiguration {
 public:
  PolymerConfiguration() = default;
  explicit PolymerConfiguration(std::vector<Polymer> ps);

  std::size_t size() const { return ps_.size(); }
  bool empty() const { return ps_.empty(); }
  auto begin() const { return ps_.begin(); }
  auto end() const { return ps_.end(); }
  const Polymer& operator[](std::size_t i) const { return ps_[i]; }
  const std::vector<Polymer>& polymers() const { return ps_; }

  void insert(Polymer p);

  friend auto operator<=>(const PolymerConfiguration&, const PolymerConfiguration&) = default;

 private:
  std::vector<Polymer> ps_;
};

// (C_G, w_G). The host graph is held by reference and must outlive the model.
// allowed and log_weight must be pure.
struct PolymerModel {
  const SimpleGraph* host = nullptr;
  int q = 2;
  // Bit s of ground[v] set iff spin s is a ground spin at v.
  std::vector<std::uint64_t> ground;
  std::function<bool(const Polymer&)> allowed;
  std::function<double(const Polymer&)> log_weight;
  // No allowed polymer has more vertices than this; used to prune enumeration.
  std::size_t max_size = std::numeric_limits<std::size_t>::max();
  // Decay rate tau for which w <= exp(-tau deg(V)) is claimed, if known.
  std::optional<double> decay;

  const SimpleGraph& graph() const { return *host; }
};

// Validates the framework invariants for a polymer of this model: connected,
// spins in range and off the ground sets, one spin per vertex.
bool is_valid_polymer(const PolymerModel& model, const Polymer& p);
// Builds a polymer or throws ValidationError.
Polymer make_polymer(const PolymerModel& model, VertexSet vertices, std::vector<Spin> spins);

// Graph distance between the vertex sets is at least 2.
bool are_compatible(const SimpleGraph& g, const Polymer& a, const Polymer& b);

// |E_gamma|: edges with at least one endpoint in V_gamma.
std::size_t polymer_edge_count(const SimpleGraph& g, const Polymer& p);

// Calls f(polymer) for every allowed spin assignment on the connected set s.
// Returns the number of assignments examined.
std::uint64_t for_each_allowed_polymer(const PolymerModel& model, const VertexSet& s,
                                       const std::function<void(Polymer&&)>& f);

struct PolymerList {
  std::vector<Polymer> polymers;
  std::vector<std::size_t> degrees;  // deg(V) per polymer, nondecreasing
  std::size_t sets = 0;              // connected sets examined
  std::vector<std::size_t> set_degrees;  // deg(S) per examined set
  std::uint64_t work = 0;            // enumeration expansions + assignments examined
};

// A_l(e): allowed polymers whose vertex set meets e and has total degree <= l.
// Sets through both endpoints are taken once.
PolymerList polymers_on_edge(const PolymerModel& model, Edge e, std::size_t budget);

// Every allowed polymer with total degree <= budget (default: no limit).
PolymerList all_allowed_polymers(const PolymerModel& model,
                                 std::size_t budget = std::numeric_limits<std::size_t>::max());

// 3 log(8 e^3 (q - 1)).
double sampling_threshold(int q);

struct SamplingConditionReport {
  double tau = 0;
  double threshold = 0;
  bool threshold_ok = false;  // tau >= 3 log(8e^3(q-1))
  bool inequality_ok = true;  // w <= exp(-tau deg) for every checked polymer
  std::size_t checked = 0;
  double min_slack = std::numeric_limits<double>::infinity();  // min of -tau deg - log w
  std::vector<Polymer> violations;  // first few
  bool passed() const { return threshold_ok && inequality_ok; }
};

SamplingConditionReport check_sampling_condition(const PolymerModel& model, double tau,
                                                 std::size_t l_max, std::size_t max_witnesses = 16);

// Sum over allowed gamma' incompatible with gamma of |E_gamma'| w(gamma').
LogValue mixing_condition_lhs(const PolymerModel& model, const Polymer& p);

struct MixingConditionReport {
  double theta = 0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_ratio = 0;  // max LHS / |E_gamma|
  std::optional<Polymer> worst;
  bool passed() const { return violations == 0; }
};

// Evaluates the mixing condition for every allowed polymer.
MixingConditionReport check_mixing_condition(const PolymerModel& model, double theta);

}  // namespace polymerdyn
