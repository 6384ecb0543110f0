#ifndef FAIRDIV_BUILTINS_HPP_
#define FAIRDIV_BUILTINS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/mechanism.hpp"
#include "fairdiv/swap_dictatorial.hpp"

namespace fairdiv {

// Named mechanisms available without a config file.
//   fractional: equal-split, ps, ps-proportional, bivalued, half-bundle
//   integral:   utilitarian, all-to-one
std::vector<std::string> builtin_names();
std::optional<FractionalMechanism> builtin_fractional(std::string_view name);
std::optional<IntegralMechanism> builtin_integral(std::string_view name);

// Swap-dictatorial choice sets by name, for m items:
//   equal-split: D = {1/2 * 1_O}
//   half-bundle: every 0/1 bundle with floor(m/2) ones (as a closure)
std::optional<SwapDictatorConfig> swap_dictator_preset(std::string_view name, std::size_t items);

}  // namespace fairdiv

#endif  // FAIRDIV_BUILTINS_HPP_
