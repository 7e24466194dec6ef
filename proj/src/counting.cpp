#include "polymerdyn/counting.hpp"

#include <algorithm>
#include <cmath>

#include "polymerdyn/oracle.hpp"

namespace polymerdyn {

AnnealingSchedule build_schedule(std::size_t m, std::size_t n, double beta_target, int q, double alpha, double eps) {
  if (!(eps > 0 && eps < 1)) throw ValidationError("build_schedule: eps must lie in (0, 1)");
  if (!(alpha > 0)) throw ValidationError("build_schedule: alpha must be positive");
  if (!(beta_target >= 0)) throw ValidationError("build_schedule: beta must be nonnegative");
  AnnealingSchedule s;
  s.beta_target = beta_target;
  s.beta_start = beta_target;
  if (m > 0 && n > 0) {
    const double start =
        (std::log(8.0 * std::exp(3.0) * (q - 1)) + std::log(16.0 * static_cast<double>(n) / eps)) / alpha;
    s.beta_start = std::max(beta_target, start);
    s.delta = 1.0 / static_cast<double>(m);
  }
  const auto k = static_cast<std::size_t>(std::ceil((s.beta_start - beta_target) * static_cast<double>(m)));
  s.betas.reserve(k + 1);
  for (std::size_t j = 0; j < k; ++j) s.betas.push_back(s.beta_start - static_cast<double>(j) * s.delta);
  s.betas.push_back(beta_target);
  s.samples = static_cast<std::size_t>(std::ceil(64.0 * static_cast<double>(k) / (eps * eps)));
  return s;
}

namespace {

struct StageAccumulator {
  double sum = 0;
  double sum_sq = 0;
  std::size_t count = 0;
  double mean() const { return sum / static_cast<double>(count); }
  double variance() const {
    if (count < 2) return 0;
    const double mu = mean();
    return std::max(0.0, (sum_sq - static_cast<double>(count) * mu * mu) / static_cast<double>(count - 1));
  }
};

// Draws `count` samples at stage i (target beta_{i+1}) into acc.
void run_stage(const SimpleGraph& g, const PottsParams& params, const AnnealingSchedule& sched, std::size_t i,
               double sample_eps, std::size_t count, Rng& rng, const CountingOptions& opt, StageAccumulator& acc,
               ZEstimate& est) {
  PottsParams p = params;
  p.beta = sched.betas[i + 1];
  const PolymerModel model = potts_polymer_model(g, p);
  PolymerSampler sampler(model, opt.dynamics);
  const double step = sched.betas[i] - sched.betas[i + 1];
  const std::size_t m = g.edge_count();
  std::size_t exhausted = 0;
  for (std::size_t k = 0; k < count; ++k) {
    SampleStats stats;
    const PolymerConfiguration conf = sampler.sample(sample_eps, rng, &stats);
    est.updates += stats.updates;
    est.work += stats.work;
    if (stats.budget_exhausted) ++exhausted;
    std::size_t b = 0;
    for (const Polymer& poly : conf) b += bichromatic_boundary(g, poly);
    if (b > m) throw InternalError("configuration boundary count exceeds |E|");
    const double x = std::exp(-step * static_cast<double>(b));
    acc.sum += x;
    acc.sum_sq += x * x;
    ++acc.count;
  }
  if (exhausted > 0)
    est.aborts.push_back("stage " + std::to_string(i) + ": " + std::to_string(exhausted) +
                         " samples hit the strict work budget");
}

ZEstimate estimate_once(const SimpleGraph& g, const PottsParams& params, double eps, std::uint64_t seed,
                        const CountingOptions& opt) {
  ZEstimate est;
  est.eps = eps;
  const AnnealingSchedule sched =
      build_schedule(g.edge_count(), g.vertex_count(), params.beta, params.q, params.alpha, eps);
  est.beta_start = sched.beta_start;
  const std::size_t k = sched.stages();
  est.K = k;
  const std::size_t n = g.vertex_count();
  if (k == 0 || n < 3) {
    // No allowed polymers (|V| < n/2 is impossible) or no stages: Zhat = 1 up to eps/8.
    est.samples_per_ratio = 0;
    return est;
  }
  const double sample_eps = eps / (8.0 * static_cast<double>(k));
  std::vector<StageAccumulator> acc(k);

  std::size_t target = opt.fixed_samples ? opt.fixed_samples : sched.samples;
  if (!opt.fixed_samples && opt.budget == SampleBudget::Adaptive) {
    const std::size_t pilot = std::min(std::max<std::size_t>(opt.pilot_samples, 2), sched.samples);
    for (std::size_t i = 0; i < k; ++i) {
      Rng rng = Rng::stream(seed, i, 0);
      run_stage(g, params, sched, i, sample_eps, pilot, rng, opt, acc[i], est);
    }
    double v = 0;
    for (const auto& a : acc) v += a.variance() / (a.mean() * a.mean());
    const auto wanted = static_cast<std::size_t>(std::ceil(64.0 * v / (eps * eps)));
    target = std::clamp(wanted, pilot, sched.samples);
  }
  est.samples_per_ratio = target;
  for (std::size_t i = 0; i < k; ++i) {
    if (acc[i].count >= target) continue;
    Rng rng = Rng::stream(seed, i, 1);
    run_stage(g, params, sched, i, sample_eps, target - acc[i].count, rng, opt, acc[i], est);
  }
  const double lo = std::exp(-1.0) - 1e-12;
  for (std::size_t i = 0; i < k; ++i) {
    const double mean = acc[i].mean();
    if (mean < lo || mean > 1.0 + 1e-12) throw InternalError("ratio estimate outside [1/e, 1]");
    est.ratio_means.push_back(mean);
    est.log_Zhat -= std::log(mean);
  }
  est.log_value = est.log_Zhat;
  return est;
}

}  // namespace

ZEstimate estimate_log_Zhat(const SimpleGraph& g, const PottsParams& params, double eps, std::uint64_t seed,
                            const CountingOptions& opt) {
  validate(params);
  validate(opt.dynamics);
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");
  if (!opt.median_of_three) return estimate_once(g, params, eps, seed, opt);
  std::vector<ZEstimate> runs;
  for (std::uint64_t i = 0; i < 3; ++i) runs.push_back(estimate_once(g, params, eps, splitmix64(seed + i), opt));
  std::sort(runs.begin(), runs.end(), [](const ZEstimate& a, const ZEstimate& b) { return a.log_Zhat < b.log_Zhat; });
  ZEstimate out = runs[1];
  for (const auto& r : {runs[0], runs[2]}) {
    out.updates += r.updates;
    out.work += r.work;
    out.aborts.insert(out.aborts.end(), r.aborts.begin(), r.aborts.end());
  }
  return out;
}

ZEstimate estimate_log_Z_potts(const SimpleGraph& g, const PottsParams& params, double eps, std::uint64_t seed,
                               const CountingOptions& opt) {
  validate(params);
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");
  const std::size_t n = g.vertex_count();
  if (eps < std::exp(-static_cast<double>(n))) {
    ZEstimate est;
    est.eps = eps;
    est.exact = true;
    est.log_value = exact_potts_logZ(g, params.q, params.beta);
    est.log_Zhat = est.log_value - std::log(params.q) - params.beta * static_cast<double>(g.edge_count());
    return est;
  }
  if (!is_connected_graph(g)) {
    const std::vector<VertexSet> comps = connected_components(g);
    const double share = eps / static_cast<double>(comps.size());
    ZEstimate total;
    total.eps = eps;
    total.exact = true;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const SimpleGraph h = induced_subgraph(g, comps[c]);
      const ZEstimate part = estimate_log_Z_potts(h, params, share, splitmix64(seed ^ (c + 1)), opt);
      total.log_value += part.log_value;
      total.log_Zhat += part.log_Zhat;
      total.K += part.K;
      total.samples_per_ratio = std::max(total.samples_per_ratio, part.samples_per_ratio);
      total.beta_start = std::max(total.beta_start, part.beta_start);
      total.ratio_means.insert(total.ratio_means.end(), part.ratio_means.begin(), part.ratio_means.end());
      total.aborts.insert(total.aborts.end(), part.aborts.begin(), part.aborts.end());
      total.exact = total.exact && part.exact;
      total.updates += part.updates;
      total.work += part.work;
    }
    return total;
  }
  ZEstimate est = estimate_log_Zhat(g, params, eps / 2, seed, opt);
  est.eps = eps;
  est.log_value = std::log(params.q) + params.beta * static_cast<double>(g.edge_count()) + est.log_Zhat;
  return est;
}

}  // namespace polymerdyn
