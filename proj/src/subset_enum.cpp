#include "polymerdyn/subset_enum.hpp"

#include <cstdlib>

namespace polymerdyn {

std::uint64_t default_work_ceiling() {
  static const std::uint64_t ceiling = [] {
    std::uint64_t c = 10'000'000ULL;
    if (const char* env = std::getenv("POLYMERDYN_WORK_CEILING")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) c = v;
    }
    return c;
  }();
  return ceiling;
}

}  // namespace polymerdyn
