#ifndef FAIRDIV_TRANSFORMS_HPP_
#define FAIRDIV_TRANSFORMS_HPP_

#include "fairdiv/mechanism.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// M^c(c) = (M^g_2(c), M^g_1(c)): the goods mechanism is run on the cost
// matrix and the two bundles are exchanged. Returned mechanism reads inputs
// under the opposite kind of `mech`.
IntegralMechanism swap_two_agent(const IntegralMechanism& mech);

// x^c_i(o) = (1 - x^g_i(o)) / (n - 1).
FractionalMechanism divisible_chore_transform(const FractionalMechanism& mech);

// Anonymous, item-symmetric average of a two-agent divisible mechanism over
// all m! item relabelings and both agent orders. Evaluating the result throws
// ResourceError when m > 6.
FractionalMechanism symmetrize(const FractionalMechanism& mech);
inline constexpr std::size_t kSymmetrizeMaxItems = 6;

// Entry-wise pivot - value with the kind flipped. Throws DomainError if
// pivot is below the largest entry.
Profile dual_profile(const Profile& profile, const Rational& pivot);

}  // namespace fairdiv

#endif  // FAIRDIV_TRANSFORMS_HPP_
