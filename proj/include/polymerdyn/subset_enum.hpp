#pragma once

#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "polymerdyn/errors.hpp"
#include "polymerdyn/graph.hpp"

namespace polymerdyn {

// Enumeration guard in candidate expansions. 10^7 unless the environment
// variable POLYMERDYN_WORK_CEILING overrides it.
std::uint64_t default_work_ceiling();

// log of (2e)^(2l - 1), the bound on connected sets through a vertex with
// total degree exactly l.
inline double log_connected_set_bound(std::size_t total_degree) {
  return (2.0 * static_cast<double>(total_degree) - 1.0) * (std::log(2.0) + 1.0);
}

struct EnumOptions {
  // Never grow a set beyond this many vertices.
  std::size_t size_cap = std::numeric_limits<std::size_t>::max();
  // Only produce sets whose smallest vertex is the anchor. Enumerating with
  // this flag from every vertex visits each connected set exactly once.
  bool anchor_is_minimum = false;
  std::uint64_t work_ceiling = default_work_ceiling();
};

// C(G, v, l): connected vertex sets containing v with total degree <= l.
struct SubsetFamily {
  Vertex anchor = 0;
  std::size_t budget = 0;
  std::vector<VertexSet> members;    // ordered by total degree, then discovery
  std::vector<std::size_t> degrees;  // total degree of members[i]
  std::uint64_t work = 0;            // candidate (S, u) expansions examined
  // The worst-case size bound for this budget is above the work ceiling; the
  // call still runs, but callers may want to warn.
  bool bound_exceeds_ceiling = false;
};

// Builds C(G, v, l) bottom-up in the total degree: the family of degree
// exactly k+1 is obtained by extending each member S of C(G, v, k) by one
// boundary vertex u with deg(S) + deg(u) = k + 1, deduplicating on the sorted
// vertex list. Extensions are pushed into per-degree buckets as soon as their
// parent is final, which visits the same (S, u) pairs as level-by-level
// regeneration without rescanning lower levels.
//
// Throws ResourceError if more than `opt.work_ceiling` candidates are examined
// and InternalError if a degree level ever exceeds (2e)^(2k-1) members.
template <AdjacencyGraph G>
SubsetFamily enum_connected_subsets(const G& g, Vertex v, std::size_t budget,
                                    const EnumOptions& opt = {}) {
  if (v >= g.vertex_count())
    throw ValidationError("enum_connected_subsets: anchor " + std::to_string(v) + " out of range");
  SubsetFamily fam;
  fam.anchor = v;
  fam.budget = budget;
  fam.bound_exceeds_ceiling =
      budget >= 1 && log_connected_set_bound(budget) > std::log(static_cast<double>(opt.work_ceiling));

  const std::size_t base = g.degree(v);
  if (budget < base || opt.size_cap == 0) return fam;

  std::vector<std::vector<VertexSet>> buckets(budget - base + 1);
  std::unordered_set<VertexSet, VertexSetHash> seen;
  buckets[0].push_back(VertexSet::from_sorted({v}));
  seen.insert(buckets[0].front());

  for (std::size_t level = base; level <= budget; ++level) {
    auto& bucket = buckets[level - base];
    if (bucket.empty()) continue;
    if (level >= 1 &&
        std::log(static_cast<double>(bucket.size())) > log_connected_set_bound(level) + 1e-9)
      throw InternalError("connected-set count " + std::to_string(bucket.size()) +
                          " exceeds (2e)^(2l-1) at l = " + std::to_string(level));
    for (const VertexSet& s : bucket) {
      if (s.size() >= opt.size_cap) continue;
      for (Vertex x : s) {
        for (Vertex u : g.neighbors(x)) {
          if (opt.anchor_is_minimum && u < v) continue;
          const std::size_t next = level + g.degree(u);
          if (next > budget || s.contains(u)) continue;
          if (++fam.work > opt.work_ceiling)
            throw ResourceError("connected-set enumeration exceeded the work ceiling of " +
                                std::to_string(opt.work_ceiling) + " expansions");
          VertexSet t = s.with(u);
          if (seen.insert(t).second) buckets[next - base].push_back(std::move(t));
        }
      }
    }
    fam.degrees.insert(fam.degrees.end(), bucket.size(), level);
    fam.members.insert(fam.members.end(), std::make_move_iterator(bucket.begin()),
                       std::make_move_iterator(bucket.end()));
    std::vector<VertexSet>().swap(bucket);
  }
  return fam;
}

// Number of connected sets S with v in S and deg(S) == l (l >= 1). The result
// is checked against (2e)^(2l-1); a violation throws InternalError.
template <AdjacencyGraph G>
std::uint64_t count_by_exact_total_degree(const G& g, Vertex v, std::size_t l,
                                          const EnumOptions& opt = {}) {
  if (l < 1) throw ValidationError("count_by_exact_total_degree: l must be >= 1");
  const SubsetFamily fam = enum_connected_subsets(g, v, l, opt);
  std::uint64_t count = 0;
  for (std::size_t d : fam.degrees)
    if (d == l) ++count;
  if (count > 0 && std::log(static_cast<double>(count)) > log_connected_set_bound(l) + 1e-9)
    throw InternalError("count_by_exact_total_degree: bound (2e)^(2l-1) violated");
  return count;
}

}  // namespace polymerdyn
