#include "fairdiv/guard.hpp"

#include <cstdlib>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {

std::uint64_t guard_limit() {
  if (const char* env = std::getenv("FAIRDIV_GUARD_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultGuardLimit;
}

void require_within_guard(std::uint64_t base, std::uint64_t exponent, std::string_view what) {
  const std::uint64_t limit = guard_limit();
  std::uint64_t total = 1;
  for (std::uint64_t k = 0; k < exponent; ++k) {
    if (base != 0 && total > limit / base) {
      throw ResourceError(std::string(what) + ": " + std::to_string(base) + "^" +
                          std::to_string(exponent) + " exceeds enumeration guard " +
                          std::to_string(limit));
    }
    total *= base;
  }
  if (total > limit) {
    throw ResourceError(std::string(what) + ": enumeration exceeds guard " + std::to_string(limit));
  }
}

}  // namespace fairdiv
