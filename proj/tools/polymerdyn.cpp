#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polymerdyn/config_model.hpp"
#include "polymerdyn/counting.hpp"
#include "polymerdyn/dynamics.hpp"
#include "polymerdyn/expansion.hpp"
#include "polymerdyn/graph_io.hpp"
#include "polymerdyn/oracle.hpp"
#include "polymerdyn/subset_enum.hpp"

#ifndef POLYMERDYN_VERSION
#define POLYMERDYN_VERSION "dev"
#endif

using json = nlohmann::ordered_json;
using namespace polymerdyn;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitCondition = 4;
constexpr int kExitInternal = 5;

// Largest n for which the CLI cross-checks alpha by exhaustive expansion.
constexpr std::size_t kAlphaCheckLimit = 12;

std::string hex64(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << x;
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json vertex_set_json(const VertexSet& s) { return json(s.vertices()); }

json polymer_json(const Polymer& p) {
  json spins = json::array();
  for (Spin s : p.spins) spins.push_back(static_cast<int>(s));
  return {{"vertices", vertex_set_json(p.vertices)}, {"spins", spins}};
}

json colouring_json(const Colouring& c) {
  json a = json::array();
  for (Spin s : c) a.push_back(static_cast<int>(s));
  return a;
}

struct RunContext {
  explicit RunContext(std::string cmd) : command(std::move(cmd)) {}
  std::string command;
  json params = json::object();
  std::optional<std::uint64_t> seed;
  bool out_of_regime = false;
  bool forced = false;
  json notes = json::array();
};

void emit(const RunContext& ctx, json results, bool as_json) {
  const std::string body = results.dump();
  json manifest = {{"schema", 1},
                   {"command", ctx.command},
                   {"params", ctx.params},
                   {"seed", ctx.seed ? json(*ctx.seed) : json(nullptr)},
                   {"version", POLYMERDYN_VERSION},
                   {"out_of_regime", ctx.out_of_regime},
                   {"forced", ctx.forced},
                   {"notes", ctx.notes},
                   {"digest", hex64(fnv1a(body))}};
  if (as_json) {
    json out = {{"schema", 1}};
    for (auto& [k, v] : results.items()) out[k] = v;
    out["manifest"] = manifest;
    std::cout << out.dump(2) << '\n';
  } else {
    for (auto& [k, v] : results.items()) std::cout << k << ": " << v.dump() << '\n';
  }
}

void warn(const std::string& msg) { std::cerr << "polymerdyn: warning: " << msg << '\n'; }

struct PottsOptions {
  int q = 3;
  double beta = 1.0;
  double alpha = 1.0;
  int colour = 0;
  bool colour_given = false;
  bool force = false;
};

void add_potts_options(CLI::App* sub, PottsOptions& o, bool need_alpha) {
  sub->add_option("--q", o.q, "number of colours")->required();
  sub->add_option("--beta", o.beta, "inverse temperature")->required();
  auto* a = sub->add_option("--alpha", o.alpha, "total-degree expansion parameter");
  if (need_alpha) a->required();
  sub->add_option_function<int>(
      "--colour", [&o](const int& c) { o.colour = c, o.colour_given = true; }, "ground colour r");
  sub->add_flag("--force-out-of-regime", o.force, "run below the guaranteed regime without a warning");
}

PottsParams to_params(const PottsOptions& o) {
  PottsParams p;
  p.q = o.q;
  p.beta = o.beta;
  p.alpha = o.alpha;
  p.r = o.colour;
  validate(p);
  return p;
}

void record_potts(RunContext& ctx, const PottsOptions& o) {
  ctx.params["q"] = o.q;
  ctx.params["beta"] = o.beta;
  ctx.params["alpha"] = o.alpha;
  if (o.colour_given) ctx.params["colour"] = o.colour;
}

// Flags parameters outside the guaranteed regime; the run proceeds either way.
void regime_check(RunContext& ctx, const SimpleGraph& g, const PottsParams& p, bool force) {
  std::vector<std::string> reasons;
  if (!p.in_regime())
    reasons.push_back("beta = " + std::to_string(p.beta) + " is below (3/alpha) log(8e^3(q-1)) = " +
                      std::to_string(p.beta_threshold()));
  if (g.vertex_count() <= kAlphaCheckLimit && is_connected_graph(g)) {
    const double measured = expansion_parameter(g);
    ctx.params["alpha_measured"] = measured;
    if (p.alpha > measured + 1e-12)
      reasons.push_back("alpha = " + std::to_string(p.alpha) + " exceeds the measured expansion " +
                        std::to_string(measured));
  } else {
    reasons.push_back("alpha is not verified for this graph");
  }
  ctx.out_of_regime = !reasons.empty();
  ctx.forced = ctx.out_of_regime && force;
  for (const auto& r : reasons) {
    ctx.notes.push_back(r);
    if (!force) warn(r + " (pass --force-out-of-regime to acknowledge)");
  }
}

struct DynOptions {
  std::string mode = "lasvegas";
  double C1 = 64, C2 = 4;
  std::optional<double> rate;
};

void add_dyn_options(CLI::App* sub, DynOptions& d) {
  sub->add_option("--mode", d.mode, "lasvegas or strict")->check(CLI::IsMember({"lasvegas", "strict"}));
  sub->add_option("--C1", d.C1, "strict-mode work constant");
  sub->add_option("--C2", d.C2, "strict-mode update constant");
  sub->add_option_function<double>("--rate", [&d](const double& r) { d.rate = r; },
                                   "override the single-edge truncation rate");
}

DynamicsConfig to_config(const DynOptions& d, RunContext& ctx) {
  DynamicsConfig c;
  c.mode = d.mode == "strict" ? Mode::StrictBudget : Mode::LasVegas;
  c.C1 = d.C1;
  c.C2 = d.C2;
  c.truncation_rate = d.rate;
  validate(c);
  ctx.params["mode"] = d.mode;
  ctx.params["C1"] = d.C1;
  ctx.params["C2"] = d.C2;
  if (d.rate) ctx.params["rate"] = *d.rate;
  return c;
}

void require_eps(double eps) {
  if (!(eps > 0 && eps < 1)) throw ValidationError("--eps must lie in (0, 1)");
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string degseq, out;
  std::uint64_t seed = 1;
  bool simple = false;
  std::size_t max_attempts = 1000;
  std::optional<double> d;
};

json degree_report_json(const DegreeSequenceReport& r, bool d_inferred) {
  return {{"n", r.n},
          {"d", r.d},
          {"d_inferred", d_inferred},
          {"min_degree", r.min_degree},
          {"max_degree", r.max_degree},
          {"max_allowed", r.max_allowed},
          {"square_sum", r.square_sum},
          {"min_ok", r.min_ok},
          {"max_ok", r.max_ok},
          {"squares_ok", r.squares_ok},
          {"even_ok", r.even_ok},
          {"in_class", r.in_class()}};
}

void run_gen(const GenOptions& o, bool as_json) {
  RunContext ctx{"gen"};
  ctx.seed = o.seed;
  ctx.params = {{"degseq", o.degseq}, {"simple", o.simple}, {"max_attempts", o.max_attempts}};
  const std::vector<long> x = read_degree_sequence_file(o.degseq);
  double d = 0;
  for (long xi : x) d += static_cast<double>(xi) * static_cast<double>(xi);
  d = o.d ? *o.d : (x.empty() ? 0 : d / static_cast<double>(x.size()));
  const DegreeSequenceReport rep = validate_degree_sequence(x, d);
  if (!rep.even_ok) throw ValidationError("degree sequence has an odd sum");
  if (!rep.min_ok) warn("minimum degree below 3");
  if (!rep.max_ok) warn("maximum degree exceeds n^(1/50); generating anyway");
  if (!rep.squares_ok) warn("sum of squared degrees exceeds d n");

  Rng rng(o.seed);
  std::ostringstream edges;
  json results = {{"degree_report", degree_report_json(rep, !o.d)}};
  if (o.simple) {
    std::size_t attempts = 0;
    const SimpleGraph g = sample_simple_graph(x, rng, o.max_attempts, &attempts);
    write_edge_list(edges, g);
    results["n"] = g.vertex_count();
    results["m"] = g.edge_count();
    results["simple"] = true;
    results["attempts"] = attempts;
  } else {
    const MultiGraph h = sample_configuration_multigraph(x, rng);
    write_edge_list(edges, h);
    results["n"] = h.vertex_count();
    results["m"] = h.edge_count();
    results["simple"] = h.is_simple();
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw ValidationError("cannot write '" + o.out + "'");
    f << edges.str();
    results["out"] = o.out;
  } else if (as_json) {
    results["edge_list"] = edges.str();
  } else {
    std::cout << edges.str();
    return;
  }
  emit(ctx, results, as_json);
}

// ---------------------------------------------------------------------------

json witness_json(const SetWitness& w) {
  return {{"set", vertex_set_json(w.set)}, {"boundary", w.boundary}, {"degree", w.degree}, {"excess", w.excess}};
}

json check_json(const AuditCheck& c) {
  json ws = json::array();
  for (const auto& w : c.witnesses) ws.push_back(witness_json(w));
  return {{"passed", c.passed()},
          {"checked", c.checked},
          {"violations", c.violations},
          {"witnesses", ws},
          {"worst", c.has_worst ? witness_json(c.worst) : json(nullptr)}};
}

std::pair<std::size_t, std::size_t> parse_caps(const std::string& s, std::size_t n) {
  if (s.empty()) {
    const AuditCaps c = default_audit_caps(n);
    return {c.small_size_cap, c.degree_cap};
  }
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ValidationError("--caps expects k,l");
  try {
    return {std::stoul(s.substr(0, comma)), std::stoul(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ValidationError("--caps expects two nonnegative integers");
  }
}

void run_audit(const std::string& path, double alpha, const std::string& caps, bool as_json) {
  RunContext ctx{"audit"};
  const AnyGraph any = read_edge_list_file(path);
  const std::size_t n = std::visit([](const auto& g) { return g.vertex_count(); }, any);
  const auto [k, l] = parse_caps(caps, n);
  ctx.params = {{"graph", path}, {"alpha", alpha}, {"small_size_cap", k}, {"degree_cap", l}};
  const AuditReport rep = std::visit([&](const auto& g) { return expansion_audit(g, alpha, k, l); }, any);
  emit(ctx,
       {{"passed", rep.passed()},
        {"sets_audited", rep.sets_audited},
        {"work", rep.work},
        {"tree_excess", check_json(rep.tree_excess)},
        {"small_set", check_json(rep.small_set)},
        {"total_degree", check_json(rep.total_degree)}},
       as_json);
}

// ---------------------------------------------------------------------------

struct SampleOptions {
  std::string graph;
  PottsOptions potts;
  DynOptions dyn;
  double eps = 0.1;
  std::uint64_t seed = 1;
  std::size_t samples = 1;
  unsigned threads = 1;
};

json sample_json(const SimpleGraph& g, const Colouring& c, const PottsSampleInfo& info, int q) {
  return {{"colouring", colouring_json(c)},
          {"dominant_colour", dominant_colour(c, q)},
          {"mono_edges", monochromatic_edges(g, c)},
          {"updates", info.stats.updates},
          {"work_units", info.stats.work},
          {"exact", info.exact},
          {"budget_exhausted", info.stats.budget_exhausted}};
}

void run_sample(const SampleOptions& o, bool as_json) {
  RunContext ctx{"sample"};
  ctx.seed = o.seed;
  ctx.params = {{"graph", o.graph}, {"eps", o.eps}, {"samples", o.samples}, {"threads", o.threads}};
  record_potts(ctx, o.potts);
  require_eps(o.eps);
  if (o.samples == 0) throw ValidationError("--samples must be positive");
  const SimpleGraph g = read_simple_graph_file(o.graph);
  const PottsParams params = to_params(o.potts);
  const DynamicsConfig config = to_config(o.dyn, ctx);
  regime_check(ctx, g, params, o.potts.force);

  std::vector<json> out(o.samples);
  bool fallback = false;
  auto worker = [&](std::size_t begin, std::size_t stride) {
    PottsSampler sampler(g, params, config);
    for (std::size_t i = begin; i < o.samples; i += stride) {
      Rng rng = Rng::stream(o.seed, i);
      PottsSampleInfo info;
      const Colouring c = o.potts.colour_given ? sampler.sample_restricted(params.r, o.eps, rng, &info)
                                               : sampler.sample(o.eps, rng, &info);
      out[i] = sample_json(g, c, info, params.q);
      if (info.fallback_rate) fallback = true;
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(o.threads, static_cast<unsigned>(o.samples)));
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          worker(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  if (fallback) ctx.notes.push_back("truncation rate fell back to tau/2");

  json results;
  if (o.samples == 1) {
    results = out[0];
    results["seed"] = o.seed;
  } else {
    json arr = json::array();
    for (auto& s : out) arr.push_back(std::move(s));
    results = {{"seed", o.seed}, {"samples", arr}};
  }
  emit(ctx, results, as_json);
}

// ---------------------------------------------------------------------------

struct CountOptions {
  std::string graph;
  PottsOptions potts;
  DynOptions dyn;
  double eps = 0.1;
  std::uint64_t seed = 1;
  bool median3 = false;
  bool fixed_budget = false;
  std::size_t samples_per_ratio = 0;
};

json estimate_json(const ZEstimate& e) {
  return {{"log_Z", e.log_value},
          {"log_Zhat", e.log_Zhat},
          {"K", e.K},
          {"samples_per_ratio", e.samples_per_ratio},
          {"beta_start", e.beta_start},
          {"exact", e.exact},
          {"updates", e.updates},
          {"work_units", e.work},
          {"aborts", e.aborts},
          {"ratio_means", e.ratio_means}};
}

CountingOptions counting_options(const CountOptions& o, RunContext& ctx) {
  CountingOptions c;
  c.dynamics = to_config(o.dyn, ctx);
  c.median_of_three = o.median3;
  c.budget = o.fixed_budget ? SampleBudget::Fixed : SampleBudget::Adaptive;
  c.fixed_samples = o.samples_per_ratio;
  ctx.params["median_of_three"] = o.median3;
  ctx.params["budget"] = o.fixed_budget ? "fixed" : "adaptive";
  if (o.samples_per_ratio) ctx.params["samples_per_ratio"] = o.samples_per_ratio;
  return c;
}

void run_count(const CountOptions& o, bool as_json) {
  RunContext ctx{"count"};
  ctx.seed = o.seed;
  ctx.params = {{"graph", o.graph}, {"eps", o.eps}};
  record_potts(ctx, o.potts);
  require_eps(o.eps);
  const SimpleGraph g = read_simple_graph_file(o.graph);
  const PottsParams params = to_params(o.potts);
  const CountingOptions copt = counting_options(o, ctx);
  regime_check(ctx, g, params, o.potts.force);
  const ZEstimate est = estimate_log_Z_potts(g, params, o.eps, o.seed, copt);
  emit(ctx, estimate_json(est), as_json);
}

// ---------------------------------------------------------------------------

void run_verify_subsets(const std::string& path, Vertex v, std::size_t budget, bool as_json) {
  RunContext ctx{"verify subsets"};
  ctx.params = {{"graph", path}, {"vertex", v}, {"budget", budget}};
  const SimpleGraph g = read_simple_graph_file(path);
  const SubsetFamily fam = enum_connected_subsets(g, v, budget);
  if (fam.bound_exceeds_ceiling) warn("the (2e)^(2l-1) bound for this budget exceeds the work ceiling");
  json members = json::array();
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    members.push_back({{"set", vertex_set_json(fam.members[i])}, {"degree", fam.degrees[i]}});
  json per_level = json::object();
  for (std::size_t l = 1; l <= budget && l <= 2 * g.edge_count(); ++l) {
    std::uint64_t c = 0;
    for (std::size_t d : fam.degrees)
      if (d == l) ++c;
    if (c > 0)
      per_level[std::to_string(l)] = {{"count", c}, {"log_bound", log_connected_set_bound(l)}};
  }
  json results = {{"count", fam.members.size()}, {"work", fam.work}, {"by_degree", per_level}, {"members", members}};
  if (g.vertex_count() <= 20) {
    // Naive filtration of all subsets.
    std::size_t naive = 0;
    const std::size_t n = g.vertex_count();
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      if (!((mask >> v) & 1U)) continue;
      std::vector<Vertex> vs;
      for (Vertex x = 0; x < n; ++x)
        if ((mask >> x) & 1U) vs.push_back(x);
      const VertexSet s = VertexSet::from_sorted(std::move(vs));
      if (total_degree(g, s) <= budget && is_connected(g, s)) ++naive;
    }
    results["naive_count"] = naive;
    results["naive_agrees"] = naive == fam.members.size();
  }
  emit(ctx, results, as_json);
}

void run_verify_conditions(const std::string& path, const PottsOptions& po, std::optional<std::size_t> lmax,
                           bool as_json) {
  RunContext ctx{"verify conditions"};
  ctx.params = {{"graph", path}};
  record_potts(ctx, po);
  const SimpleGraph g = read_simple_graph_file(path);
  const PottsParams params = to_params(po);
  const PolymerModel model = potts_polymer_model(g, params);
  const std::size_t l = lmax ? *lmax : 2 * g.edge_count();
  ctx.params["lmax"] = l;
  const SamplingConditionReport s = check_sampling_condition(model, params.tau(), l);
  const MixingConditionReport mix = check_mixing_condition(model, 1.0 / std::exp(1.0));
  json viol = json::array();
  for (const auto& p : s.violations) viol.push_back(polymer_json(p));
  json results = {
      {"sampling",
       {{"passed", s.passed()},
        {"tau", s.tau},
        {"threshold", s.threshold},
        {"threshold_ok", s.threshold_ok},
        {"inequality_ok", s.inequality_ok},
        {"checked", s.checked},
        {"min_slack", s.checked ? json(s.min_slack) : json(nullptr)},
        {"violations", viol}}},
      {"mixing",
       {{"passed", mix.passed()},
        {"theta", mix.theta},
        {"checked", mix.checked},
        {"violations", mix.violations},
        {"max_ratio", mix.max_ratio},
        {"worst", mix.worst ? polymer_json(*mix.worst) : json(nullptr)}}},
      {"in_regime", params.in_regime()},
      {"beta_threshold", params.beta_threshold()}};
  if (g.vertex_count() <= kAlphaCheckLimit && is_connected_graph(g))
    results["alpha_measured"] = expansion_parameter(g);
  emit(ctx, results, as_json);
}

void run_verify_stationarity(const std::string& path, const PottsOptions& po, bool as_json) {
  RunContext ctx{"verify stationarity"};
  ctx.params = {{"graph", path}};
  record_potts(ctx, po);
  const SimpleGraph g = read_simple_graph_file(path);
  const PottsParams params = to_params(po);
  const PolymerModel model = potts_polymer_model(g, params);
  const TransitionMatrix t = transition_matrix(model);
  double min_self = 1;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (const auto& [j, p] : t.rows[i])
      if (j == i) min_self = std::min(min_self, p);
  const double gap = stationarity_gap(t);
  const double db = detailed_balance_gap(t);
  emit(ctx,
       {{"states", t.rows.size()},
        {"polymers", t.space.polymers.size()},
        {"log_Zhat", t.space.log_Z},
        {"stationarity_gap", gap},
        {"detailed_balance_gap", db},
        {"row_sum_gap", row_sum_gap(t)},
        {"min_self_loop", min_self},
        {"passed", gap <= 1e-12 && db <= 1e-12}},
       as_json);
}

void run_verify_nu(const std::string& path, const PottsOptions& po, std::size_t edge, std::size_t draws,
                   std::uint64_t seed, const DynOptions& dyn, bool as_json) {
  RunContext ctx{"verify nu"};
  ctx.seed = seed;
  ctx.params = {{"graph", path}, {"edge", edge}, {"draws", draws}};
  record_potts(ctx, po);
  const SimpleGraph g = read_simple_graph_file(path);
  if (edge >= g.edge_count()) throw ValidationError("--edge index out of range");
  const PottsParams params = to_params(po);
  const DynamicsConfig config = to_config(dyn, ctx);
  const PolymerModel model = potts_polymer_model(g, params);
  const Edge e = g.edges()[edge];
  const Distribution<Polymer> exact = exact_nu_e(model, e);
  json dist = json::array();
  for (const auto& [p, pr] : exact)
    dist.push_back({{"polymer", p.empty() ? json(nullptr) : polymer_json(p)}, {"probability", pr}});
  json results = {{"edge", {e.u, e.v}}, {"exact", dist}};
  if (draws > 0) {
    const TruncationRate rate = truncation_rate(model, config);
    EdgePolymerSampler sampler(model, rate.rate);
    Rng rng(seed);
    std::vector<Polymer> got;
    got.reserve(draws);
    std::uint64_t work = 0;
    for (std::size_t i = 0; i < draws; ++i) {
      const Polymer* p = sampler.sample(edge, rng, work);
      got.push_back(p ? *p : Polymer{});
    }
    results["rate"] = rate.rate;
    results["rate_fallback"] = rate.fallback;
    results["tv"] = tv_distance(empirical_distribution(got), exact);
    results["work_units"] = work;
  }
  emit(ctx, results, as_json);
}

void run_verify_potts_z(const std::string& path, const PottsOptions& po, double eps, std::uint64_t seed,
                        const DynOptions& dyn, bool as_json) {
  RunContext ctx{"verify potts-z"};
  ctx.seed = seed;
  ctx.params = {{"graph", path}, {"eps", eps}};
  record_potts(ctx, po);
  require_eps(eps);
  const SimpleGraph g = read_simple_graph_file(path);
  const PottsParams params = to_params(po);
  CountingOptions copt;
  copt.dynamics = to_config(dyn, ctx);
  regime_check(ctx, g, params, po.force);
  const double exact = exact_potts_logZ(g, params.q, params.beta);
  const double restricted = exact_potts_restricted_logZ(g, params.q, params.beta, params.r);
  const ZEstimate est = estimate_log_Z_potts(g, params, eps, seed, copt);
  const double err = std::abs(est.log_value - exact);
  emit(ctx,
       {{"exact_log_Z", exact},
        {"exact_log_qZr", std::log(params.q) + restricted},
        {"estimate", estimate_json(est)},
        {"abs_error", err},
        {"within_eps", err <= eps}},
       as_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polymer dynamics sampling and approximate counting for the ferromagnetic Potts model"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON on stdout");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "configuration-model graph from a degree sequence");
  gen_cmd->add_option("--degseq", gen.degseq, "degree-sequence file")->required();
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_flag("--simple", gen.simple, "reject until simple");
  gen_cmd->add_option("--max-attempts", gen.max_attempts);
  gen_cmd->add_option_function<double>("--d", [&gen](const double& d) { gen.d = d; }, "sparsity parameter d");
  gen_cmd->add_option("--out", gen.out, "edge-list output file");
  gen_cmd->add_flag("--json", as_json);

  std::string audit_graph, audit_caps;
  double audit_alpha = 0;
  auto* audit_cmd = app.add_subcommand("audit", "empirical expansion audit");
  audit_cmd->add_option("--graph", audit_graph)->required();
  audit_cmd->add_option("--alpha", audit_alpha)->required();
  audit_cmd->add_option("--caps", audit_caps, "small_size_cap,degree_cap");
  audit_cmd->add_flag("--json", as_json);

  SampleOptions so;
  auto* sample_cmd = app.add_subcommand("sample", "eps-sample a Potts colouring");
  sample_cmd->add_option("--graph", so.graph)->required();
  add_potts_options(sample_cmd, so.potts, true);
  add_dyn_options(sample_cmd, so.dyn);
  sample_cmd->add_option("--eps", so.eps)->required();
  sample_cmd->add_option("--seed", so.seed);
  sample_cmd->add_option("--samples", so.samples);
  sample_cmd->add_option("--threads", so.threads);
  sample_cmd->add_flag("--json", as_json);

  CountOptions co;
  auto* count_cmd = app.add_subcommand("count", "approximate log Z");
  count_cmd->add_option("--graph", co.graph)->required();
  add_potts_options(count_cmd, co.potts, true);
  add_dyn_options(count_cmd, co.dyn);
  count_cmd->add_option("--eps", co.eps)->required();
  count_cmd->add_option("--seed", co.seed);
  count_cmd->add_flag("--median3", co.median3, "median of three independent estimates");
  count_cmd->add_flag("--fixed-budget", co.fixed_budget, "ceil(64K/eps^2) samples per ratio");
  count_cmd->add_option("--samples-per-ratio", co.samples_per_ratio);
  count_cmd->add_flag("--json", as_json);

  auto* verify_cmd = app.add_subcommand("verify", "brute-force checks");
  verify_cmd->require_subcommand(1);

  std::string vs_graph;
  Vertex vs_vertex = 0;
  std::size_t vs_budget = 0;
  auto* vs = verify_cmd->add_subcommand("subsets", "enumerate C(G, v, l)");
  vs->add_option("--graph", vs_graph)->required();
  vs->add_option("--vertex", vs_vertex)->required();
  vs->add_option("--budget", vs_budget)->required();
  vs->add_flag("--json", as_json);

  std::string vc_graph;
  PottsOptions vc_potts;
  std::optional<std::size_t> vc_lmax;
  auto* vc = verify_cmd->add_subcommand("conditions", "sampling and mixing conditions");
  vc->add_option("--graph", vc_graph)->required();
  add_potts_options(vc, vc_potts, true);
  vc->add_option_function<std::size_t>("--lmax", [&vc_lmax](const std::size_t& l) { vc_lmax = l; });
  vc->add_flag("--json", as_json);

  std::string st_graph;
  PottsOptions st_potts;
  auto* st = verify_cmd->add_subcommand("stationarity", "exact transition matrix checks");
  st->add_option("--graph", st_graph)->required();
  add_potts_options(st, st_potts, false);
  st->add_flag("--json", as_json);

  std::string nu_graph;
  PottsOptions nu_potts;
  DynOptions nu_dyn;
  std::size_t nu_edge = 0, nu_draws = 0;
  std::uint64_t nu_seed = 1;
  auto* nu = verify_cmd->add_subcommand("nu", "exact and sampled single-edge distribution");
  nu->add_option("--graph", nu_graph)->required();
  add_potts_options(nu, nu_potts, true);
  add_dyn_options(nu, nu_dyn);
  nu->add_option("--edge", nu_edge, "edge index in file order")->required();
  nu->add_option("--draws", nu_draws);
  nu->add_option("--seed", nu_seed);
  nu->add_flag("--json", as_json);

  std::string pz_graph;
  PottsOptions pz_potts;
  DynOptions pz_dyn;
  double pz_eps = 0.1;
  std::uint64_t pz_seed = 1;
  auto* pz = verify_cmd->add_subcommand("potts-z", "estimate vs exact log Z");
  pz->add_option("--graph", pz_graph)->required();
  add_potts_options(pz, pz_potts, true);
  add_dyn_options(pz, pz_dyn);
  pz->add_option("--eps", pz_eps);
  pz->add_option("--seed", pz_seed);
  pz->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (*gen_cmd) {
      run_gen(gen, as_json);
    } else if (*audit_cmd) {
      run_audit(audit_graph, audit_alpha, audit_caps, as_json);
    } else if (*sample_cmd) {
      run_sample(so, as_json);
    } else if (*count_cmd) {
      run_count(co, as_json);
    } else if (*vs) {
      run_verify_subsets(vs_graph, vs_vertex, vs_budget, as_json);
    } else if (*vc) {
      run_verify_conditions(vc_graph, vc_potts, vc_lmax, as_json);
    } else if (*st) {
      run_verify_stationarity(st_graph, st_potts, as_json);
    } else if (*nu) {
      run_verify_nu(nu_graph, nu_potts, nu_edge, nu_draws, nu_seed, nu_dyn, as_json);
    } else if (*pz) {
      run_verify_potts_z(pz_graph, pz_potts, pz_eps, pz_seed, pz_dyn, as_json);
    }
  } catch (const ValidationError& e) {
    std::cerr << "polymerdyn: invalid input: " << e.what() << '\n';
    code = kExitValidation;
  } catch (const ResourceError& e) {
    std::cerr << "polymerdyn: resource limit: " << e.what() << '\n';
    code = kExitResource;
  } catch (const ConditionViolation& e) {
    std::cerr << "polymerdyn: condition violated: " << e.what() << '\n';
    code = kExitCondition;
  } catch (const InternalError& e) {
    std::cerr << "polymerdyn: internal error: " << e.what() << '\n';
    code = kExitInternal;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "polymerdyn: wall time " << secs << " s\n";
  return code;
}
