#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "polymerdyn/polymer.hpp"
#include "polymerdyn/potts.hpp"
#include "polymerdyn/rng.hpp"

namespace polymerdyn {

enum class Mode { LasVegas, StrictBudget };

struct DynamicsConfig {
  double theta = 1.0 / std::exp(1.0);
  double C1 = 64;
  double C2 = 4;
  Mode mode = Mode::LasVegas;
  // Overrides the truncation rate r used by the single-edge sampler.
  std::optional<double> truncation_rate;
};

void validate(const DynamicsConfig& c);

struct TruncationRate {
  double rate = 0;
  // The guaranteed-regime formula tau - log(12e^2(q-1)) was not positive and
  // tau/2 is used instead.
  bool fallback = false;
};

// tau - log(12e^2(q-1)) from the model's decay rate; tau/2 when that is not
// positive. An explicit override in `config` wins. Throws ValidationError if
// the model carries no decay rate and no override is given.
TruncationRate truncation_rate(const PolymerModel& model, const DynamicsConfig& config);

// l >= 0 with Pr(l >= k) = exp(-rate k).
std::size_t sample_truncation_level(double rate, Rng& rng);

// Algorithm 1 with a per-edge cache of A_l(e). Enumeration results depend only
// on (edge, budget), so caching leaves the output law unchanged; work is
// charged as if the enumeration had been redone for the drawn level.
class EdgePolymerSampler {
 public:
  EdgePolymerSampler(const PolymerModel& model, double rate);

  // Returns a pointer into the cache, or nullptr for the empty outcome.
  // Throws ConditionViolation if the acceptance mass of A_l(e) exceeds 1.
  const Polymer* sample(std::size_t edge_index, Rng& rng, std::uint64_t& work);

  double rate() const { return rate_; }
  const PolymerModel& model() const { return *model_; }

 private:
  struct Entry {
    bool filled = false;
    std::size_t budget = 0;
    std::vector<Polymer> polymers;
    std::vector<std::size_t> degrees;
    std::vector<double> prefix;            // prefix[i] = sum_{j<i} w_j e^{r deg_j}
    std::vector<std::size_t> set_degrees;  // degree of every enumerated set, sorted
  };
  void fill(Entry& entry, std::size_t edge_index, std::size_t budget);

  const PolymerModel* model_;
  double rate_;
  std::size_t full_budget_;
  std::vector<Entry> cache_;
};

// Samples nu_e once with a throwaway cache.
std::optional<Polymer> sample_nu_e(const PolymerModel& model, Edge e, double rate, Rng& rng);

// Gamma_t plus a vertex -> polymer-slot index; gamma_e is the polymer owning
// an endpoint of e, which is unique because polymers are at distance >= 2.
class ChainState {
 public:
  explicit ChainState(std::size_t n) : owner_(n, kNone) {}

  static constexpr std::uint32_t kNone = 0xffffffffU;

  // Slot of the polymer meeting edge (u, v), or kNone.
  std::uint32_t polymer_at(Edge e) const {
    return owner_[e.u] != kNone ? owner_[e.u] : owner_[e.v];
  }
  bool compatible(const SimpleGraph& g, const Polymer& p) const;
  void insert(const Polymer& p);
  void remove(std::uint32_t slot);
  std::size_t size() const { return live_; }
  PolymerConfiguration configuration() const;
  // Rebuilds the index from scratch and compares (for audits).
  bool index_consistent() const;

  std::uint64_t steps = 0;  // work units
  std::uint64_t updates = 0;

 private:
  std::vector<std::uint32_t> owner_;
  std::vector<std::optional<Polymer>> slots_;
  std::vector<std::uint32_t> free_;
  std::size_t live_ = 0;
};

// One transition: uniform edge, then with probability 1/2 remove gamma_e, else
// draw from nu_e and add it when compatible.
void dynamics_step(EdgePolymerSampler& sampler, ChainState& state, Rng& rng);

// ceil((2m / (1 - theta)) ln(2n / eps)).
std::uint64_t mixing_time(std::size_t m, std::size_t n, double eps, double theta);

struct SampleStats {
  std::uint64_t updates = 0;
  std::uint64_t work = 0;
  std::size_t attempts = 0;
  bool budget_exhausted = false;  // strict mode returned the empty configuration
};

// Reusable eps-sampler for mu_G: keeps the single-edge cache across calls.
class PolymerSampler {
 public:
  PolymerSampler(const PolymerModel& model, DynamicsConfig config);
  PolymerConfiguration sample(double eps, Rng& rng, SampleStats* stats = nullptr);
  const TruncationRate& rate() const { return rate_; }

 private:
  PolymerConfiguration run_las_vegas(double eps, Rng& rng, SampleStats& stats);
  PolymerConfiguration run_strict(double eps, Rng& rng, SampleStats& stats);

  const PolymerModel* model_;
  DynamicsConfig config_;
  TruncationRate rate_;
  EdgePolymerSampler edge_sampler_;
};

PolymerConfiguration sample_polymer_gibbs(const PolymerModel& model, double eps, const DynamicsConfig& config,
                                          Rng& rng, SampleStats* stats = nullptr);

struct PottsSampleInfo {
  int ground_colour = -1;  // colour drawn for the largest component
  bool exact = false;      // every component took the brute-force branch
  bool fallback_rate = false;
  SampleStats stats;
};

// eps-sampler for the Potts distribution. Per connected component: if the
// component's share of eps is below e^{-n_c}, sample exactly; otherwise draw
// the ground colour uniformly, sample the polymer model at accuracy share/q and
// map to a colouring. The graph must outlive the sampler.
class PottsSampler {
 public:
  PottsSampler(const SimpleGraph& g, PottsParams params, DynamicsConfig config = {});
  PottsSampler(const PottsSampler&) = delete;
  PottsSampler& operator=(const PottsSampler&) = delete;
  Colouring sample(double eps, Rng& rng, PottsSampleInfo* info = nullptr);
  // Samples only from the restricted model with ground colour r.
  Colouring sample_restricted(int r, double eps, Rng& rng, PottsSampleInfo* info = nullptr);

 private:
  struct Component {
    std::vector<Vertex> vertices;  // global labels, sorted
    std::optional<SimpleGraph> owned;  // induced subgraph unless it is the whole graph
    const SimpleGraph* graph = nullptr;
    std::vector<PolymerModel> models;  // one per ground colour
    std::vector<PolymerSampler> samplers;
  };
  Colouring run(std::optional<int> fixed_r, double eps, Rng& rng, PottsSampleInfo* info);

  const SimpleGraph* g_;
  PottsParams params_;
  DynamicsConfig config_;
  std::vector<std::unique_ptr<Component>> comps_;
};

Colouring sample_potts(const SimpleGraph& g, const PottsParams& params, double eps, std::uint64_t seed,
                       const DynamicsConfig& config = {}, PottsSampleInfo* info = nullptr);

}  // namespace polymerdyn
