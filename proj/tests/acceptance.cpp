// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// below; reference values are computed here by direct enumeration rather
// than through the library's oracle module wherever that is feasible.
//
//   acceptance            run everything
//   acceptance 3 5        run only criteria 3 and 5

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polymerdyn/config_model.hpp"
#include "polymerdyn/counting.hpp"
#include "polymerdyn/dynamics.hpp"
#include "polymerdyn/expansion.hpp"
#include "polymerdyn/oracle.hpp"
#include "polymerdyn/subset_enum.hpp"

using namespace polymerdyn;

namespace {

// Pinned tolerances.
constexpr double kIdentityTol = 1e-12;
constexpr double kIdentityTimeLimit = 1.0;
constexpr double kStationarityTol = 1e-12;
constexpr double kStationarityTimeLimit = 120.0;
constexpr double kNuTvTol = 0.02;
constexpr int kNuDraws = 100000;
constexpr double kNuTimeLimit = 30.0;
constexpr double kSamplerEps = 0.1;
constexpr int kSamplerDraws = 100000;
constexpr double kSamplerTimeLimit = 300.0;
constexpr double kCountEps = 0.1;
constexpr int kCountRuns = 20;
constexpr int kCountRequired = 15;
constexpr double kCountTimeLimit = 600.0;
constexpr int kBoundGraphs = 100;
constexpr std::size_t kBoundMaxL = 12;
constexpr double kBoundTimeLimit = 120.0;
constexpr int kCmSamples = 100000;
constexpr double kCmStdErrs = 3.0;
constexpr double kCmTimeLimit = 30.0;
constexpr int kAuditSeeds = 100;
constexpr int kAuditRequired = 95;
constexpr double kAuditTimeLimit = 600.0;
constexpr double kScalingFactor = 15.0;
constexpr int kScalingRepeats = 11;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail, double secs) {
  std::printf("%s [%d] %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

PottsParams potts(int q, double beta, double alpha = 1.0, int r = 0) {
  PottsParams p;
  p.q = q;
  p.beta = beta;
  p.alpha = alpha;
  p.r = r;
  return p;
}

double lse(const std::vector<double>& xs) { return log_sum_exp(std::span<const double>(xs)); }

// Calls f(colouring) for every q-colouring of n vertices.
void for_each_colouring(std::size_t n, int q, const std::function<void(const Colouring&)>& f) {
  Colouring c(n, 0);
  while (true) {
    f(c);
    std::size_t i = 0;
    while (i < n && c[i] == q - 1) c[i++] = 0;
    if (i == n) return;
    ++c[i];
  }
}

std::size_t mono(const SimpleGraph& g, const Colouring& c) {
  std::size_t k = 0;
  for (const Edge& e : g.edges()) k += c[e.u] == c[e.v];
  return k;
}

// Exact Potts law by direct enumeration.
std::map<Colouring, double> potts_law(const SimpleGraph& g, int q, double beta) {
  std::vector<Colouring> cs;
  std::vector<double> lw;
  for_each_colouring(g.vertex_count(), q, [&](const Colouring& c) {
    cs.push_back(c);
    lw.push_back(beta * static_cast<double>(mono(g, c)));
  });
  const double logZ = lse(lw);
  std::map<Colouring, double> out;
  for (std::size_t i = 0; i < cs.size(); ++i) out[cs[i]] = std::exp(lw[i] - logZ);
  return out;
}

double potts_log_z(const SimpleGraph& g, int q, double beta) {
  std::vector<double> lw;
  for_each_colouring(g.vertex_count(), q, [&](const Colouring& c) { lw.push_back(beta * static_cast<double>(mono(g, c))); });
  return lse(lw);
}

double alpha_of(const SimpleGraph& g) {
  if (g.vertex_count() < 2) return 1.0;
  const ExpansionResult r = total_degree_expansion(g, g.vertex_count() / 2);
  return r.vacuous ? 1.0 : r.ratio.value();
}

SimpleGraph k33() { return SimpleGraph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}); }

SimpleGraph prism() {
  return SimpleGraph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  const SimpleGraph g = path_graph(3);
  double worst = 0;
  for (double beta : {1.0, 2.0, 3.0}) {
    const PolymerModel m = potts_polymer_model(g, potts(2, beta));
    const double logZhat = exact_polymer_logZ(m);
    const double closed = std::log(1 + 2 * std::exp(-beta) + 2 * std::exp(-2 * beta));
    // Z^r over the colourings that polymer configurations map to: every run of
    // non-0 vertices along the path is shorter than n/2, i.e. a single vertex.
    std::vector<double> lw;
    for_each_colouring(3, 2, [&](const Colouring& c) {
      const bool ok = !(c[0] != 0 && c[1] != 0) && !(c[1] != 0 && c[2] != 0);
      if (ok) lw.push_back(beta * static_cast<double>(mono(g, c)));
    });
    if (lw.size() != 5) throw InternalError("expected five ground-state colourings of P3");
    const double logZr = lse(lw);
    worst = std::max({worst, std::abs(logZhat - closed), std::abs(beta * 2 + logZhat - logZr)});
  }
  const double secs = seconds_since(t0);
  report(1, worst <= kIdentityTol && secs < kIdentityTimeLimit, "exact identities on P3, q=2, beta in {1,2,3}",
         fmt("max log-space error %.3g (tol %.0e)", worst, kIdentityTol), secs);
}

void criterion2() {
  const auto t0 = Clock::now();
  double worst_gap = 0, worst_db = 0;
  std::size_t graphs = 0, graphs6 = 0, states = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const SimpleGraph& g : connected_graphs(n)) {
      const PolymerModel m = potts_polymer_model(g, potts(3, 2.0));
      const TransitionMatrix t = transition_matrix(m);
      worst_gap = std::max(worst_gap, stationarity_gap(t));
      worst_db = std::max(worst_db, detailed_balance_gap(t));
      states += t.rows.size();
      ++graphs;
      graphs6 += n == 6;
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = graphs6 == 112 && worst_gap <= kStationarityTol && worst_db <= kStationarityTol &&
                    secs < kStationarityTimeLimit;
  report(2, pass, "stationarity and detailed balance, connected graphs n<=6, q=3, beta=2",
         fmt("%zu graphs (%zu on 6 vertices), %zu states, max gap %.3g, max balance gap %.3g (tol %.0e)", graphs,
             graphs6, states, worst_gap, worst_db, kStationarityTol),
         secs);
}

// Exact nu_e when every allowed polymer is a single vertex (n <= 4).
std::map<Polymer, double> singleton_nu(const SimpleGraph& g, int q, double beta, int r, Edge e) {
  std::map<Polymer, double> d;
  double total = 0;
  for (Vertex x : {e.u, e.v})
    for (int c = 0; c < q; ++c) {
      if (c == r) continue;
      Polymer p{VertexSet{x}, {static_cast<Spin>(c)}};
      const double w = std::exp(-beta * static_cast<double>(g.degree(x)));
      d[p] = w;
      total += w;
    }
  d[Polymer{}] = 1 - total;
  return d;
}

void criterion3() {
  const auto t0 = Clock::now();
  struct Case {
    std::string name;
    SimpleGraph g;
    PottsParams p;
  };
  std::vector<Case> cases;
  cases.push_back({"P3", path_graph(3), potts(2, 3.0)});
  cases.push_back({"K4", complete_graph(4), potts(3, 5.0, 2.0 / 3.0)});
  double worst = 0;
  std::string where;
  std::uint64_t seed = 300;
  for (const Case& c : cases) {
    const PolymerModel m = potts_polymer_model(c.g, c.p);
    const TruncationRate rate = truncation_rate(m, {});
    EdgePolymerSampler sampler(m, rate.rate);
    for (std::size_t i = 0; i < c.g.edge_count(); ++i) {
      Rng rng(seed++);
      std::map<Polymer, double> emp;
      std::uint64_t work = 0;
      for (int k = 0; k < kNuDraws; ++k) {
        const Polymer* p = sampler.sample(i, rng, work);
        emp[p ? *p : Polymer{}] += 1.0 / kNuDraws;
      }
      const double tv = tv_distance(emp, singleton_nu(c.g, c.p.q, c.p.beta, c.p.r, c.g.edges()[i]));
      if (tv > worst) {
        worst = tv;
        where = fmt("%s edge %zu", c.name.c_str(), i);
      }
    }
  }
  const double secs = seconds_since(t0);
  report(3, worst <= kNuTvTol && secs < kNuTimeLimit, "single-edge sampler vs exact nu_e on P3 and K4",
         fmt("max TV %.4f at %s over %d draws per edge (tol %.2f)", worst, where.c_str(), kNuDraws, kNuTvTol), secs);
}

void criterion4() {
  const auto t0 = Clock::now();
  double worst = 0;
  std::string where;
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t idx = 0;
    for (const SimpleGraph& g : connected_graphs(n)) {
      const PottsParams p = potts(3, 3.0, alpha_of(g));
      const auto exact = potts_law(g, 3, 3.0);
      PottsSampler sampler(g, p);
      Rng rng = Rng::stream(400, n * 100 + idx);
      std::map<Colouring, double> emp;
      for (int k = 0; k < kSamplerDraws; ++k) emp[sampler.sample(kSamplerEps, rng)] += 1.0 / kSamplerDraws;
      const double tv = tv_distance(emp, exact);
      if (tv >= worst) {
        worst = tv;
        where = fmt("n=%zu graph %zu (m=%zu, alpha=%.3f)", n, idx, g.edge_count(), p.alpha);
      }
      ++idx;
      ++graphs;
    }
  }
  const double secs = seconds_since(t0);
  report(4, worst <= kSamplerEps && secs < kSamplerTimeLimit,
         "end-to-end Potts sampler, connected graphs n<=5, q=3, beta=3",
         fmt("%zu graphs, max TV %.4f at %s over %d samples (tol %.2f)", graphs, worst, where.c_str(), kSamplerDraws,
             kSamplerEps),
         secs);
}

void criterion5() {
  const auto t0 = Clock::now();
  struct Case {
    std::string name;
    SimpleGraph g;
  };
  const std::vector<Case> cases{{"P3", path_graph(3)}, {"K4", complete_graph(4)}, {"C5", cycle_graph(5)},
                                {"K33", k33()},        {"prism", prism()}};
  bool pass = true;
  std::string detail;
  for (const Case& c : cases) {
    const double exact = potts_log_z(c.g, 3, 3.0);
    const PottsParams p = potts(3, 3.0, alpha_of(c.g));
    int ok = 0;
    double worst = 0;
    for (int s = 0; s < kCountRuns; ++s) {
      const double err = std::abs(estimate_log_Z_potts(c.g, p, kCountEps, 500 + s).log_value - exact);
      ok += err <= kCountEps;
      worst = std::max(worst, err);
    }
    pass = pass && ok >= kCountRequired;
    detail += fmt("%s %d/%d (max err %.3f); ", c.name.c_str(), ok, kCountRuns, worst);
  }
  const double secs = seconds_since(t0);
  detail += fmt("need >= %d/%d within %.2f", kCountRequired, kCountRuns, kCountEps);
  report(5, pass && secs < kCountTimeLimit, "log Z estimates, q=3, beta=3, eps=0.1", detail, secs);
}

void criterion6() {
  const auto t0 = Clock::now();
  const std::vector<long> x(30, 3);
  std::size_t checks = 0, violations = 0;
  double tightest = -INFINITY;  // max of log count - log bound
  for (int s = 0; s < kBoundGraphs; ++s) {
    Rng rng = Rng::stream(600, s);
    const SimpleGraph g = sample_simple_graph(x, rng);
    for (Vertex v = 0; v < 30; ++v)
      for (std::size_t l = 1; l <= kBoundMaxL; ++l) {
        const std::uint64_t count = count_by_exact_total_degree(g, v, l);
        const double log_bound = (2.0 * static_cast<double>(l) - 1) * std::log(2 * std::exp(1.0));
        ++checks;
        if (count == 0) continue;
        const double gap = std::log(static_cast<double>(count)) - log_bound;
        tightest = std::max(tightest, gap);
        violations += gap > 0;
      }
  }
  const double secs = seconds_since(t0);
  report(6, violations == 0 && secs < kBoundTimeLimit,
         "connected-set bound (2e)^(2l-1), cubic configuration-model graphs n=30, l<=12",
         fmt("%zu checks, %zu violations, max log(count/bound) %.2f", checks, violations, tightest), secs);
}

void criterion7() {
  const auto t0 = Clock::now();
  const std::vector<long> x{3, 3, 3, 3};
  double sum[4][4] = {}, sum_sq[4][4] = {};
  Rng rng(700);
  for (int i = 0; i < kCmSamples; ++i) {
    const MultiGraph h = sample_configuration_multigraph(x, rng);
    for (Vertex u = 0; u < 4; ++u)
      for (Vertex v = u + 1; v < 4; ++v) {
        const double k = static_cast<double>(h.multiplicity(u, v));
        sum[u][v] += k;
        sum_sq[u][v] += k * k;
      }
  }
  const double target = 9.0 / 11.0;
  double worst_z = 0;
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = u + 1; v < 4; ++v) {
      const double mean = sum[u][v] / kCmSamples;
      const double var = (sum_sq[u][v] - kCmSamples * mean * mean) / (kCmSamples - 1);
      worst_z = std::max(worst_z, std::abs(mean - target) / std::sqrt(var / kCmSamples));
    }
  int k4 = 0, successes = 0;
  const SimpleGraph ref = complete_graph(4);
  for (int i = 0; i < 1000; ++i) {
    const SimpleGraph g = sample_simple_graph(x, rng);
    ++successes;
    std::vector<Edge> es = g.edges();
    std::sort(es.begin(), es.end());
    k4 += es == ref.edges();
  }
  const double secs = seconds_since(t0);
  report(7, worst_z <= kCmStdErrs && k4 == successes && secs < kCmTimeLimit,
         "configuration model pair multiplicities and simple output for x=(3,3,3,3)",
         fmt("max |mean - 9/11| = %.2f standard errors (tol %.0f); K4 in %d/%d simple draws", worst_z, kCmStdErrs,
             k4, successes),
         secs);
}

void criterion8() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  for (std::size_t n : {50, 100, 200}) {
    const std::vector<long> x(n, 3);
    int clean = 0, disconnected = 0;
    std::size_t excess_checked = 0;
    for (int s = 0; s < kAuditSeeds; ++s) {
      Rng rng = Rng::stream(800 + n, s);
      const MultiGraph h = sample_configuration_multigraph(x, rng);
      // A disconnected draw has a component with no boundary at all; it
      // counts as a failed seed.
      if (!is_connected_graph(h)) {
        ++disconnected;
        continue;
      }
      const AuditReport rep = expansion_audit(h, 0.0, 8, 24);
      clean += rep.small_set.passed() && rep.tree_excess.passed();
      excess_checked += rep.tree_excess.checked;
    }
    pass = pass && clean >= kAuditRequired;
    detail += fmt("n=%zu %d/%d clean, %d disconnected, %zu sets with deg>=36; ", n, clean, kAuditSeeds, disconnected,
                  excess_checked);
  }
  const double secs = seconds_since(t0);
  detail += fmt("need >= %d", kAuditRequired);
  report(8, pass && secs < kAuditTimeLimit, "expansion audits on cubic configuration-model multigraphs, caps (8,24)",
         detail, secs);
}

void criterion9() {
  const auto t0 = Clock::now();
  // alpha is a parameter of the run: it sets beta = 3 * (3/alpha) log(8e^3(q-1)).
  const double alpha = 0.1;
  PottsParams p = potts(3, 1.0, alpha);
  p.beta = 3 * p.beta_threshold();
  std::vector<double> medians;
  std::string detail;
  for (std::size_t n : {100, 1000, 10000}) {
    const std::vector<long> x(n, 3);
    Rng grng(900 + n);
    const SimpleGraph g = sample_simple_graph(x, grng);
    std::vector<double> times;
    for (int k = 0; k < kScalingRepeats; ++k) {
      const auto t = Clock::now();
      const Colouring c = sample_potts(g, p, kSamplerEps, 9000 + k);
      times.push_back(seconds_since(t));
      if (c.size() != n) throw InternalError("sampler returned a colouring of the wrong size");
    }
    std::sort(times.begin(), times.end());
    medians.push_back(times[times.size() / 2]);
    detail += fmt("n=%zu %.4g s; ", n, medians.back());
  }
  const double f1 = medians[1] / medians[0], f2 = medians[2] / medians[1];
  const double secs = seconds_since(t0);
  detail += fmt("growth %.2f and %.2f per decade (limit %.0f)", f1, f2, kScalingFactor);
  report(9, f1 <= kScalingFactor && f2 <= kScalingFactor, "sampler wall-time scaling on cubic graphs", detail, secs);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    try {
      all[i]();
    } catch (const std::exception& e) {
      report(id, false, "criterion aborted", e.what(), 0);
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
