#ifndef FAIRDIV_SWAP_DICTATORIAL_HPP_
#define FAIRDIV_SWAP_DICTATORIAL_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/mechanism.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// Choice set D of fractional bundles in [0,1]^m. With symmetric_closure the
// mechanism behaves as if D contained every coordinate permutation of each
// listed bundle; the closure is never materialized.
struct SwapDictatorConfig {
  std::vector<std::vector<Rational>> bundles;
  bool symmetric_closure = false;
};

// Throws ConfigError on an empty D, ragged bundles or entries outside [0,1].
void require_valid(const SwapDictatorConfig& config, std::size_t items);

// The bundle `agent` would pick from D: best under profile.kind(), lowest
// index in D on ties. Under symmetric closure, each generator is first
// rearranged optimally (largest entries to the most valued / least costly
// items, lower item index first among equals).
std::vector<Rational> dictator_choice(const SwapDictatorConfig& config, const Profile& profile,
                                      std::size_t agent);

// M_1 = (x_1 + 1 - x_2) / 2, M_2 = 1 - M_1.
FractionalAllocation swap_dictatorial(const SwapDictatorConfig& config, const Profile& profile);

FractionalMechanism swap_dictatorial_mechanism(SwapDictatorConfig config, ItemKind kind, std::string name);

// All 0/1 bundles with exactly `size` ones, in lexicographic order of the
// chosen index sets.
std::vector<std::vector<Rational>> fixed_size_bundles(std::size_t items, std::size_t size);

}  // namespace fairdiv

#endif  // FAIRDIV_SWAP_DICTATORIAL_HPP_
