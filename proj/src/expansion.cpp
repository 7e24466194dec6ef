#include "polymerdyn/expansion.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "polymerdyn/subset_enum.hpp"

namespace polymerdyn {

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

ExpansionResult total_degree_expansion(const SimpleGraph& g, std::size_t size_cap) {
  const std::size_t n = g.vertex_count();
  if (size_cap > n / 2)
    throw ValidationError("total_degree_expansion: size cap " + std::to_string(size_cap) +
                          " exceeds n/2 = " + std::to_string(n / 2));
  ExpansionResult res;
  if (size_cap == 0) return res;
  for (std::size_t v = 0; v < n; ++v)
    if (g.degree(static_cast<Vertex>(v)) == 0)
      throw ValidationError("total_degree_expansion: vertex " + std::to_string(v) + " is isolated");

  EnumOptions opt;
  opt.size_cap = size_cap;
  opt.anchor_is_minimum = true;
  const std::size_t budget = 2 * g.edge_count();
  for (std::size_t v = 0; v < n; ++v) {
    const SubsetFamily fam = enum_connected_subsets(g, static_cast<Vertex>(v), budget, opt);
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      const VertexSet& s = fam.members[i];
      const Rational ratio = make_rational(boundary_edge_count(g, s), fam.degrees[i]);
      ++res.sets_examined;
      if (res.vacuous || ratio < res.ratio || (ratio == res.ratio && s < res.witness)) {
        res.ratio = ratio;
        res.witness = s;
        res.vacuous = false;
      }
    }
  }
  return res;
}

double expansion_parameter(const SimpleGraph& g) {
  const ExpansionResult r = total_degree_expansion(g, g.vertex_count() / 2);
  return r.vacuous ? 1.0 : r.ratio.value();
}

AuditCaps default_audit_caps(std::size_t n) {
  const double l = n > 1 ? std::log(static_cast<double>(n)) : 0.0;
  const auto small = std::min<std::size_t>(static_cast<std::size_t>(std::ceil(l * l)), 8);
  return {small, 3 * small};
}

namespace {

void record(AuditCheck& check, bool violated, const SetWitness& w, std::size_t max_witnesses) {
  ++check.checked;
  if (!violated) return;
  ++check.violations;
  if (check.witnesses.size() < max_witnesses) check.witnesses.push_back(w);
}

// Keeps the set minimising `key`, ties to the lexicographically smaller set.
void track_worst(AuditCheck& check, const SetWitness& w, double key, double& best_key) {
  if (!check.has_worst || key < best_key || (key == best_key && w.set < check.worst.set)) {
    check.worst = w;
    check.has_worst = true;
    best_key = key;
  }
}

template <AdjacencyGraph G>
AuditReport audit_impl(const G& g, double alpha, std::size_t small_cap, std::size_t degree_cap,
                       std::size_t max_witnesses) {
  if (!(alpha >= 0)) throw ValidationError("expansion_audit: alpha must be nonnegative");
  if (!is_connected_graph(g)) throw ValidationError("expansion_audit: graph is not connected");
  AuditReport rep;
  rep.alpha = alpha;
  rep.small_size_cap = small_cap;
  rep.degree_cap = degree_cap;
  const std::size_t n = g.vertex_count();
  EnumOptions opt;
  opt.size_cap = small_cap;
  opt.anchor_is_minimum = true;
  double worst_excess = 0, worst_small = 0, worst_alpha = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const SubsetFamily fam = enum_connected_subsets(g, static_cast<Vertex>(v), degree_cap, opt);
    rep.work += fam.work;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      SetWitness w;
      w.set = fam.members[i];
      w.degree = fam.degrees[i];
      w.boundary = boundary_edge_count(g, w.set);
      w.excess = static_cast<long>(internal_edge_count(g, w.set)) - (static_cast<long>(w.set.size()) - 1);
      ++rep.sets_audited;
      if (w.degree >= 36) {
        record(rep.tree_excess, 6 * w.excess > static_cast<long>(w.degree), w, max_witnesses);
        track_worst(rep.tree_excess, w, -static_cast<double>(w.excess) / static_cast<double>(w.degree),
                    worst_excess);
      }
      if (2 * w.set.size() > n || w.degree == 0) continue;
      record(rep.small_set, 4 * w.boundary < w.set.size(), w, max_witnesses);
      track_worst(rep.small_set, w, static_cast<double>(w.boundary) / static_cast<double>(w.set.size()),
                  worst_small);
      const double ratio = static_cast<double>(w.boundary) / static_cast<double>(w.degree);
      record(rep.total_degree, static_cast<double>(w.boundary) < alpha * static_cast<double>(w.degree), w,
             max_witnesses);
      track_worst(rep.total_degree, w, ratio, worst_alpha);
    }
  }
  return rep;
}

}  // namespace

AuditReport expansion_audit(const SimpleGraph& g, double alpha, std::size_t small_size_cap,
                            std::size_t degree_cap, std::size_t max_witnesses) {
  return audit_impl(g, alpha, small_size_cap, degree_cap, max_witnesses);
}

AuditReport expansion_audit(const MultiGraph& g, double alpha, std::size_t small_size_cap,
                            std::size_t degree_cap, std::size_t max_witnesses) {
  return audit_impl(g, alpha, small_size_cap, degree_cap, max_witnesses);
}

}  // namespace polymerdyn
