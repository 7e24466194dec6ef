#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace polymerdyn {

// Seeded 64-bit generator. Every randomized operation takes an Rng& so a run
// is reproducible from its seed; independent streams are derived with
// `stream`, which makes parallel fan-out independent of scheduling.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  // Child stream for (seed, id); distinct ids give statistically independent
  // generators.
  static Rng stream(std::uint64_t seed, std::uint64_t id);
  static Rng stream(std::uint64_t seed, std::uint64_t id, std::uint64_t sub);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace polymerdyn
