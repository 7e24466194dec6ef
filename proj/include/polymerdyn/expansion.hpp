#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polymerdyn/graph.hpp"

namespace polymerdyn {

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  // Exact comparison by cross-multiplication.
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

Rational make_rational(std::uint64_t num, std::uint64_t den);

struct ExpansionResult {
  Rational ratio{1, 1};
  VertexSet witness;      // empty when no set qualifies
  bool vacuous = true;    // no connected set was examined
  std::size_t sets_examined = 0;
};

// Exhaustive minimum of e(S, S^c) / deg(S) over connected S with
// 1 <= |S| <= size_cap. Ties go to the lexicographically smallest S.
// Exponential in general; the work ceiling of the subset enumerator applies.
// Throws ValidationError if size_cap > n/2 or some vertex is isolated.
ExpansionResult total_degree_expansion(const SimpleGraph& g, std::size_t size_cap);

// Convenience: cap floor(n/2), and alpha = 1 for the vacuous case.
double expansion_parameter(const SimpleGraph& g);

struct SetWitness {
  VertexSet set;
  std::size_t boundary = 0;  // e(S, S^c)
  std::size_t degree = 0;    // deg(S)
  long excess = 0;           // tree excess of H[S]
};

struct AuditCheck {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<SetWitness> witnesses;  // first few violations, in discovery order
  bool has_worst = false;
  SetWitness worst;  // the most extreme audited set (violating or not)
  bool passed() const { return violations == 0; }
};

struct AuditReport {
  double alpha = 0;
  std::size_t small_size_cap = 0;
  std::size_t degree_cap = 0;
  std::size_t sets_audited = 0;
  std::uint64_t work = 0;
  // t <= deg(S)/6 whenever deg(S) >= 36.
  AuditCheck tree_excess;
  // e(S, S^c) >= |S|/4 for |S| <= n/2.
  AuditCheck small_set;
  // e(S, S^c) >= alpha * deg(S) for |S| <= n/2.
  AuditCheck total_degree;
  bool passed() const { return tree_excess.passed() && small_set.passed() && total_degree.passed(); }
};

struct AuditCaps {
  std::size_t small_size_cap;
  std::size_t degree_cap;
};

// min(ceil((log n)^2), 8) and three times that.
AuditCaps default_audit_caps(std::size_t n);

// Checks all connected S with |S| <= small_size_cap and deg(S) <= degree_cap.
AuditReport expansion_audit(const SimpleGraph& g, double alpha, std::size_t small_size_cap,
                            std::size_t degree_cap, std::size_t max_witnesses = 16);
AuditReport expansion_audit(const MultiGraph& g, double alpha, std::size_t small_size_cap,
                            std::size_t degree_cap, std::size_t max_witnesses = 16);

}  // namespace polymerdyn
