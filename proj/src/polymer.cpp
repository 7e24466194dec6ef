#include "polymerdyn/polymer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "polymerdyn/subset_enum.hpp"

namespace polymerdyn {

PolymerConfiguration::PolymerConfiguration(std::vector<Polymer> ps) : ps_(std::move(ps)) {
  std::sort(ps_.begin(), ps_.end(),
            [](const Polymer& a, const Polymer& b) { return a.vertices.front() < b.vertices.front(); });
}

void PolymerConfiguration::insert(Polymer p) {
  auto it = std::lower_bound(ps_.begin(), ps_.end(), p.vertices.front(),
                             [](const Polymer& a, Vertex v) { return a.vertices.front() < v; });
  ps_.insert(it, std::move(p));
}

bool is_valid_polymer(const PolymerModel& model, const Polymer& p) {
  const SimpleGraph& g = model.graph();
  if (p.vertices.empty() || p.spins.size() != p.vertices.size()) return false;
  if (p.vertices.vertices().back() >= g.vertex_count()) return false;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const Spin s = p.spins[i];
    if (s >= model.q) return false;
    if ((model.ground[p.vertices[i]] >> s) & 1U) return false;
  }
  return is_connected(g, p.vertices);
}

Polymer make_polymer(const PolymerModel& model, VertexSet vertices, std::vector<Spin> spins) {
  Polymer p{std::move(vertices), std::move(spins)};
  if (!is_valid_polymer(model, p))
    throw ValidationError("invalid polymer: vertex set must be connected and spins must avoid the ground set");
  return p;
}

bool are_compatible(const SimpleGraph& g, const Polymer& a, const Polymer& b) {
  if (a.vertices.intersects(b.vertices)) return false;
  for (Vertex v : a.vertices)
    for (Vertex w : g.neighbors(v))
      if (b.vertices.contains(w)) return false;
  return true;
}

std::size_t polymer_edge_count(const SimpleGraph& g, const Polymer& p) {
  return total_degree(g, p.vertices) - internal_edge_count(g, p.vertices);
}

std::uint64_t for_each_allowed_polymer(const PolymerModel& model, const VertexSet& s,
                                       const std::function<void(Polymer&&)>& f) {
  const std::size_t k = s.size();
  std::vector<std::vector<Spin>> options(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (int c = 0; c < model.q; ++c)
      if (!((model.ground[s[i]] >> c) & 1U)) options[i].push_back(static_cast<Spin>(c));
    if (options[i].empty()) return 0;
  }
  std::vector<std::size_t> digit(k, 0);
  std::uint64_t examined = 0;
  Polymer p{s, std::vector<Spin>(k)};
  while (true) {
    for (std::size_t i = 0; i < k; ++i) p.spins[i] = options[i][digit[i]];
    ++examined;
    if (model.allowed(p)) f(Polymer(p));
    std::size_t i = 0;
    while (i < k && ++digit[i] == options[i].size()) digit[i++] = 0;
    if (i == k) break;
  }
  return examined;
}

namespace {

void append_polymers(const PolymerModel& model, const SubsetFamily& fam, bool skip_with_vertex,
                     Vertex skip, PolymerList& out) {
  out.work += fam.work;
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const VertexSet& s = fam.members[i];
    if (skip_with_vertex && s.contains(skip)) continue;
    ++out.sets;
    const std::size_t deg = fam.degrees[i];
    out.set_degrees.push_back(deg);
    out.work += for_each_allowed_polymer(model, s, [&](Polymer&& p) {
      out.polymers.push_back(std::move(p));
      out.degrees.push_back(deg);
    });
  }
}

void sort_by_degree(PolymerList& list) {
  std::vector<std::size_t> idx(list.polymers.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return list.degrees[a] < list.degrees[b]; });
  std::vector<Polymer> ps;
  std::vector<std::size_t> ds;
  ps.reserve(idx.size());
  ds.reserve(idx.size());
  for (std::size_t i : idx) {
    ps.push_back(std::move(list.polymers[i]));
    ds.push_back(list.degrees[i]);
  }
  list.polymers = std::move(ps);
  list.degrees = std::move(ds);
}

std::size_t clamp_budget(const SimpleGraph& g, std::size_t budget) {
  return std::min(budget, 2 * g.edge_count());
}

}  // namespace

PolymerList polymers_on_edge(const PolymerModel& model, Edge e, std::size_t budget) {
  const SimpleGraph& g = model.graph();
  budget = clamp_budget(g, budget);
  EnumOptions opt;
  opt.size_cap = model.max_size;
  PolymerList out;
  append_polymers(model, enum_connected_subsets(g, e.u, budget, opt), false, 0, out);
  append_polymers(model, enum_connected_subsets(g, e.v, budget, opt), true, e.u, out);
  sort_by_degree(out);
  return out;
}

PolymerList all_allowed_polymers(const PolymerModel& model, std::size_t budget) {
  const SimpleGraph& g = model.graph();
  budget = clamp_budget(g, budget);
  EnumOptions opt;
  opt.size_cap = model.max_size;
  opt.anchor_is_minimum = true;
  PolymerList out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    append_polymers(model, enum_connected_subsets(g, static_cast<Vertex>(v), budget, opt), false, 0, out);
  sort_by_degree(out);
  return out;
}

double sampling_threshold(int q) {
  return 3.0 * std::log(8.0 * std::exp(3.0) * (q - 1));
}

SamplingConditionReport check_sampling_condition(const PolymerModel& model, double tau,
                                                 std::size_t l_max, std::size_t max_witnesses) {
  SamplingConditionReport rep;
  rep.tau = tau;
  rep.threshold = sampling_threshold(model.q);
  rep.threshold_ok = tau >= rep.threshold;
  const PolymerList list = all_allowed_polymers(model, l_max);
  for (std::size_t i = 0; i < list.polymers.size(); ++i) {
    const double slack = -tau * static_cast<double>(list.degrees[i]) - model.log_weight(list.polymers[i]);
    ++rep.checked;
    rep.min_slack = std::min(rep.min_slack, slack);
    if (slack < -1e-12) {
      rep.inequality_ok = false;
      if (rep.violations.size() < max_witnesses) rep.violations.push_back(list.polymers[i]);
    }
  }
  return rep;
}

LogValue mixing_condition_lhs(const PolymerModel& model, const Polymer& p) {
  const SimpleGraph& g = model.graph();
  const PolymerList list = all_allowed_polymers(model);
  LogValue sum = LogValue::zero();
  for (const Polymer& other : list.polymers) {
    if (are_compatible(g, p, other)) continue;
    const auto edges = static_cast<double>(polymer_edge_count(g, other));
    sum += LogValue::from_log(std::log(edges) + model.log_weight(other));
  }
  return sum;
}

MixingConditionReport check_mixing_condition(const PolymerModel& model, double theta) {
  const SimpleGraph& g = model.graph();
  MixingConditionReport rep;
  rep.theta = theta;
  const PolymerList list = all_allowed_polymers(model);
  const std::size_t k = list.polymers.size();
  std::vector<double> term(k);
  for (std::size_t j = 0; j < k; ++j)
    term[j] = std::log(static_cast<double>(polymer_edge_count(g, list.polymers[j]))) +
              model.log_weight(list.polymers[j]);
  for (std::size_t i = 0; i < k; ++i) {
    const Polymer& p = list.polymers[i];
    double lhs = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j)
      if (!are_compatible(g, p, list.polymers[j])) lhs = log_add(lhs, term[j]);
    const double ratio = std::exp(lhs) / static_cast<double>(polymer_edge_count(g, p));
    ++rep.checked;
    if (ratio > theta) ++rep.violations;
    if (!rep.worst || ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.worst = p;
    }
  }
  return rep;
}

}  // namespace polymerdyn
