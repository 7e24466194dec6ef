#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polymerdyn/dynamics.hpp"
#include "polymerdyn/graph.hpp"
#include "polymerdyn/potts.hpp"

namespace polymerdyn {

struct AnnealingSchedule {
  double beta_target = 0;
  double beta_start = 0;
  double delta = 0;           // 1/m
  std::vector<double> betas;  // beta_0 = start > ... > beta_K = target
  std::size_t samples = 0;    // ceil(64 K / eps^2)

  std::size_t stages() const { return betas.empty() ? 0 : betas.size() - 1; }
};

// beta_start = max(beta_target, (log(8e^3(q-1)) + ln(16 n / eps)) / alpha),
// step 1/m, K = ceil((beta_start - beta_target) m).
AnnealingSchedule build_schedule(std::size_t m, std::size_t n, double beta_target, int q, double alpha, double eps);

enum class SampleBudget {
  Fixed,     // ceil(64 K / eps^2) samples per ratio
  Adaptive,  // pilot run, then a variance-based count capped by the fixed one
};

struct CountingOptions {
  SampleBudget budget = SampleBudget::Adaptive;
  std::size_t pilot_samples = 64;
  std::size_t fixed_samples = 0;  // if nonzero, overrides the per-ratio count
  bool median_of_three = false;
  DynamicsConfig dynamics;
};

struct ZEstimate {
  double log_value = 0;  // log Zhat, or log Z for the Potts wrapper
  double log_Zhat = 0;
  double eps = 0;
  std::size_t K = 0;
  std::size_t samples_per_ratio = 0;
  double beta_start = 0;
  std::vector<double> ratio_means;
  std::vector<std::string> aborts;
  bool exact = false;  // brute-force branch
  std::uint64_t updates = 0;
  std::uint64_t work = 0;
};

// Telescoping estimate of log Zhat^r for the Potts polymer model on g.
ZEstimate estimate_log_Zhat(const SimpleGraph& g, const PottsParams& params, double eps, std::uint64_t seed,
                            const CountingOptions& opt = {});

// log q + beta |E| + log Zhat(eps/2), per connected component; exact when
// eps < e^{-n}.
ZEstimate estimate_log_Z_potts(const SimpleGraph& g, const PottsParams& params, double eps, std::uint64_t seed,
                               const CountingOptions& opt = {});

}  // namespace polymerdyn
