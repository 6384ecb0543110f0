#ifndef FAIRDIV_GUARD_HPP_
#define FAIRDIV_GUARD_HPP_

#include <cstdint>
#include <string_view>

namespace fairdiv {

inline constexpr std::uint64_t kDefaultGuardLimit = 10'000'000;

// Enumeration budget for brute-force oracles. FAIRDIV_GUARD_LIMIT overrides
// the default when it holds a positive integer.
std::uint64_t guard_limit();

// Throws ResourceError if base^exponent exceeds guard_limit().
void require_within_guard(std::uint64_t base, std::uint64_t exponent, std::string_view what);

}  // namespace fairdiv

#endif  // FAIRDIV_GUARD_HPP_
