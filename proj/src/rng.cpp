#include "polymerdyn/rng.hpp"

namespace polymerdyn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(splitmix64(seed))};
  engine_.seed(seq);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t id) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(id + 0x632be59bd9b4e019ULL)));
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t id, std::uint64_t sub) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ splitmix64(id + 0x632be59bd9b4e019ULL)) ^
                        splitmix64(sub + 0x8cb92ba72f3d8dd7ULL)));
}

}  // namespace polymerdyn
