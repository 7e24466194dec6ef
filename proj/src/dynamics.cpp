#include "polymerdyn/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "polymerdyn/oracle.hpp"

namespace polymerdyn {

void validate(const DynamicsConfig& c) {
  if (!(c.theta > 0 && c.theta < 1)) throw ValidationError("theta must lie in (0, 1)");
  if (!(c.C1 >= 1) || !(c.C2 >= 1)) throw ValidationError("C1 and C2 must be at least 1");
  if (c.truncation_rate && !(*c.truncation_rate > 0))
    throw ValidationError("truncation rate must be positive");
}

TruncationRate truncation_rate(const PolymerModel& model, const DynamicsConfig& config) {
  if (config.truncation_rate) {
    if (!(*config.truncation_rate > 0)) throw ValidationError("truncation rate must be positive");
    return {*config.truncation_rate, false};
  }
  if (!model.decay) throw ValidationError("model has no decay rate; pass an explicit truncation rate");
  const double tau = *model.decay;
  if (!(tau > 0)) throw ValidationError("decay rate tau must be positive");
  const double r = tau - std::log(12.0 * std::exp(2.0) * (model.q - 1));
  if (r > 0) return {r, false};
  return {tau / 2, true};
}

std::size_t sample_truncation_level(double rate, Rng& rng) {
  const double u = 1.0 - rng.uniform();  // (0, 1]
  const double x = std::ceil(-std::log(u) / rate) - 1.0;
  if (!(x > 0)) return 0;
  constexpr double cap = static_cast<double>(std::numeric_limits<std::size_t>::max() / 4);
  return x >= cap ? static_cast<std::size_t>(cap) : static_cast<std::size_t>(x);
}

EdgePolymerSampler::EdgePolymerSampler(const PolymerModel& model, double rate)
    : model_(&model),
      rate_(rate),
      full_budget_(2 * model.graph().edge_count()),
      cache_(model.graph().edge_count()) {
  if (!(rate > 0)) throw ValidationError("truncation rate must be positive");
}

void EdgePolymerSampler::fill(Entry& entry, std::size_t edge_index, std::size_t budget) {
  PolymerList list = polymers_on_edge(*model_, model_->graph().edges()[edge_index], budget);
  entry.filled = true;
  entry.budget = budget;
  entry.degrees = std::move(list.degrees);
  entry.polymers = std::move(list.polymers);
  entry.set_degrees = std::move(list.set_degrees);
  std::sort(entry.set_degrees.begin(), entry.set_degrees.end());
  entry.prefix.assign(entry.polymers.size() + 1, 0.0);
  for (std::size_t i = 0; i < entry.polymers.size(); ++i) {
    const double p = std::exp(model_->log_weight(entry.polymers[i]) + rate_ * static_cast<double>(entry.degrees[i]));
    entry.prefix[i + 1] = entry.prefix[i] + p;
  }
}

const Polymer* EdgePolymerSampler::sample(std::size_t edge_index, Rng& rng, std::uint64_t& work) {
  const std::size_t level = std::min(sample_truncation_level(rate_, rng), full_budget_);
  if (level == 0) return nullptr;
  Entry& entry = cache_[edge_index];
  if (!entry.filled || (entry.budget < level && entry.budget < full_budget_)) fill(entry, edge_index, level);

  const auto count = static_cast<std::size_t>(
      std::upper_bound(entry.degrees.begin(), entry.degrees.end(), level) - entry.degrees.begin());
  const auto sets = static_cast<std::size_t>(
      std::upper_bound(entry.set_degrees.begin(), entry.set_degrees.end(), level) - entry.set_degrees.begin());
  work += sets + count;

  const double mass = entry.prefix[count];
  if (mass > 1.0 + 1e-12)
    throw ConditionViolation("single-edge acceptance mass " + std::to_string(mass) + " exceeds 1 at level " +
                             std::to_string(level) + "; the sampling condition fails for these parameters");
  const double u = rng.uniform();
  auto first = entry.prefix.begin() + 1;
  const auto idx = static_cast<std::size_t>(std::upper_bound(first, first + static_cast<std::ptrdiff_t>(count), u) - first);
  return idx < count ? &entry.polymers[idx] : nullptr;
}

std::optional<Polymer> sample_nu_e(const PolymerModel& model, Edge e, double rate, Rng& rng) {
  const auto& edges = model.graph().edges();
  const Edge key{std::min(e.u, e.v), std::max(e.u, e.v)};
  const auto it = std::find(edges.begin(), edges.end(), key);
  if (it == edges.end()) throw ValidationError("sample_nu_e: not an edge of the host graph");
  EdgePolymerSampler sampler(model, rate);
  std::uint64_t work = 0;
  const Polymer* p = sampler.sample(static_cast<std::size_t>(it - edges.begin()), rng, work);
  if (!p) return std::nullopt;
  return *p;
}

bool ChainState::compatible(const SimpleGraph& g, const Polymer& p) const {
  for (Vertex v : p.vertices) {
    if (owner_[v] != kNone) return false;
    for (Vertex w : g.neighbors(v))
      if (owner_[w] != kNone) return false;
  }
  return true;
}

void ChainState::insert(const Polymer& p) {
  std::uint32_t slot;
  if (!free_.empty()) {
    slot = free_.back();
    free_.pop_back();
    slots_[slot] = p;
  } else {
    slot = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back(p);
  }
  for (Vertex v : p.vertices) owner_[v] = slot;
  ++live_;
}

void ChainState::remove(std::uint32_t slot) {
  for (Vertex v : slots_[slot]->vertices) owner_[v] = kNone;
  slots_[slot].reset();
  free_.push_back(slot);
  --live_;
}

PolymerConfiguration ChainState::configuration() const {
  std::vector<Polymer> ps;
  ps.reserve(live_);
  for (const auto& s : slots_)
    if (s) ps.push_back(*s);
  return PolymerConfiguration(std::move(ps));
}

bool ChainState::index_consistent() const {
  std::vector<std::uint32_t> expect(owner_.size(), kNone);
  std::size_t live = 0;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (!slots_[i]) continue;
    ++live;
    for (Vertex v : slots_[i]->vertices) {
      if (expect[v] != kNone) return false;
      expect[v] = static_cast<std::uint32_t>(i);
    }
  }
  return live == live_ && expect == owner_;
}

void dynamics_step(EdgePolymerSampler& sampler, ChainState& state, Rng& rng) {
  const SimpleGraph& g = sampler.model().graph();
  const std::size_t m = g.edge_count();
  ++state.updates;
  ++state.steps;
  if (m == 0) return;
  const std::size_t i = rng.below(m);
  const Edge e = g.edges()[i];
  if (rng.coin()) {
    const std::uint32_t slot = state.polymer_at(e);
    if (slot != ChainState::kNone) state.remove(slot);
  } else {
    const Polymer* p = sampler.sample(i, rng, state.steps);
    if (p && state.compatible(g, *p)) state.insert(*p);
  }
}

std::uint64_t mixing_time(std::size_t m, std::size_t n, double eps, double theta) {
  if (!(eps > 0 && eps < 1)) throw ValidationError("mixing_time: eps must lie in (0, 1)");
  if (!(theta > 0 && theta < 1)) throw ValidationError("mixing_time: theta must lie in (0, 1)");
  if (m == 0 || n == 0) return 0;
  const double t = 2.0 * static_cast<double>(m) / (1.0 - theta) * std::log(2.0 * static_cast<double>(n) / eps);
  return static_cast<std::uint64_t>(std::ceil(t));
}

PolymerSampler::PolymerSampler(const PolymerModel& model, DynamicsConfig config)
    : model_(&model),
      config_(config),
      rate_((validate(config), truncation_rate(model, config))),
      edge_sampler_(model, rate_.rate) {}

PolymerConfiguration PolymerSampler::sample(double eps, Rng& rng, SampleStats* stats) {
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");
  SampleStats local;
  PolymerConfiguration out =
      config_.mode == Mode::LasVegas ? run_las_vegas(eps, rng, local) : run_strict(eps, rng, local);
  if (stats) {
    stats->updates += local.updates;
    stats->work += local.work;
    stats->attempts += local.attempts;
    stats->budget_exhausted = stats->budget_exhausted || local.budget_exhausted;
  }
  return out;
}

PolymerConfiguration PolymerSampler::run_las_vegas(double eps, Rng& rng, SampleStats& stats) {
  const SimpleGraph& g = model_->graph();
  const std::uint64_t t = mixing_time(g.edge_count(), g.vertex_count(), eps / 2, config_.theta);
  ChainState state(g.vertex_count());
  for (std::uint64_t i = 0; i < t; ++i) dynamics_step(edge_sampler_, state, rng);
  stats.updates = state.updates;
  stats.work = state.steps;
  stats.attempts = 1;
  return state.configuration();
}

PolymerConfiguration PolymerSampler::run_strict(double eps, Rng& rng, SampleStats& stats) {
  const SimpleGraph& g = model_->graph();
  const std::size_t m = g.edge_count();
  if (m == 0) {
    stats.attempts = 1;
    return {};
  }
  const double log_term = std::ceil(std::log(static_cast<double>(m) / eps));
  const auto needed = static_cast<std::uint64_t>(std::ceil(config_.C2 * static_cast<double>(m) * log_term));
  const auto budget =
      static_cast<std::uint64_t>(std::ceil(3.0 * config_.C1 * config_.C2 * static_cast<double>(m) * log_term));
  const auto attempts = static_cast<std::size_t>(std::ceil(std::log(2.0 / eps)));
  for (std::size_t a = 0; a < attempts; ++a) {
    ChainState state(g.vertex_count());
    while (state.updates < needed && state.steps < budget) dynamics_step(edge_sampler_, state, rng);
    stats.updates += state.updates;
    stats.work += state.steps;
    ++stats.attempts;
    if (state.updates >= needed && state.steps <= budget) return state.configuration();
  }
  stats.budget_exhausted = true;
  return {};
}

PolymerConfiguration sample_polymer_gibbs(const PolymerModel& model, double eps, const DynamicsConfig& config,
                                          Rng& rng, SampleStats* stats) {
  PolymerSampler sampler(model, config);
  return sampler.sample(eps, rng, stats);
}

PottsSampler::PottsSampler(const SimpleGraph& g, PottsParams params, DynamicsConfig config)
    : g_(&g), params_(params), config_(config) {
  validate(params_);
  validate(config_);
  std::vector<VertexSet> parts;
  if (is_connected_graph(g)) {
    if (g.vertex_count() > 0) parts.push_back(all_vertices(g));
  } else {
    parts = connected_components(g);
  }
  for (VertexSet& part : parts) {
    auto c = std::make_unique<Component>();
    c->vertices = part.vertices();
    if (parts.size() == 1) {
      c->graph = &g;
    } else {
      c->owned = induced_subgraph(g, part);
      c->graph = &*c->owned;
    }
    c->models.reserve(static_cast<std::size_t>(params_.q));
    for (int r = 0; r < params_.q; ++r) {
      PottsParams p = params_;
      p.r = r;
      c->models.push_back(potts_polymer_model(*c->graph, p));
    }
    c->samplers.reserve(c->models.size());
    for (const PolymerModel& m : c->models) c->samplers.emplace_back(m, config_);
    comps_.push_back(std::move(c));
  }
}

Colouring PottsSampler::sample(double eps, Rng& rng, PottsSampleInfo* info) {
  return run(std::nullopt, eps, rng, info);
}

Colouring PottsSampler::sample_restricted(int r, double eps, Rng& rng, PottsSampleInfo* info) {
  if (r < 0 || r >= params_.q) throw ValidationError("ground colour must lie in [0, q)");
  return run(r, eps, rng, info);
}

Colouring PottsSampler::run(std::optional<int> fixed_r, double eps, Rng& rng, PottsSampleInfo* info) {
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");
  Colouring out(g_->vertex_count(), 0);
  PottsSampleInfo local;
  local.exact = !comps_.empty();
  std::size_t largest = 0;
  const double share = eps / static_cast<double>(std::max<std::size_t>(comps_.size(), 1));
  for (const auto& c : comps_) {
    const std::size_t nc = c->vertices.size();
    Colouring part;
    int r = -1;
    if (!fixed_r && share < std::exp(-static_cast<double>(nc))) {
      part = sample_potts_exact(*c->graph, params_.q, params_.beta, rng);
      r = dominant_colour(part, params_.q);
    } else {
      r = fixed_r ? *fixed_r : static_cast<int>(rng.below(static_cast<std::size_t>(params_.q)));
      const double acc = fixed_r ? share : share / params_.q;
      PolymerSampler& s = c->samplers[static_cast<std::size_t>(r)];
      const PolymerConfiguration conf = s.sample(acc, rng, &local.stats);
      local.fallback_rate = local.fallback_rate || s.rate().fallback;
      local.exact = false;
      part = config_to_colouring(nc, conf, r);
    }
    if (nc > largest) {
      largest = nc;
      local.ground_colour = r;
    }
    for (std::size_t i = 0; i < nc; ++i) out[c->vertices[i]] = part[i];
  }
  if (info) *info = local;
  return out;
}

Colouring sample_potts(const SimpleGraph& g, const PottsParams& params, double eps, std::uint64_t seed,
                       const DynamicsConfig& config, PottsSampleInfo* info) {
  PottsSampler sampler(g, params, config);
  Rng rng(seed);
  return sampler.sample(eps, rng, info);
}

}  // namespace polymerdyn
