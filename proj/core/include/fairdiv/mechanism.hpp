#ifndef FAIRDIV_MECHANISM_HPP_
#define FAIRDIV_MECHANISM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "fairdiv/allocation.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/profile.hpp"

namespace fairdiv {

struct MechanismInfo {
  std::string name;
  // The reading under which the mechanism interprets its input; profiles are
  // re-tagged to this kind before evaluation. nullopt = use the profile's kind.
  std::optional<ItemKind> kind;
  Divisibility divisibility = Divisibility::kIndivisible;
  std::optional<std::size_t> agents;  // required agent count, if any
  std::uint64_t seed = 0;             // tie-break seed, for replayability
};

// A deterministic allocation rule. `Allocation` is IntegralAllocation or
// FractionalAllocation.
template <class Allocation>
class Mechanism {
 public:
  using Fn = std::function<Allocation(const Profile&)>;

  Mechanism(MechanismInfo info, Fn fn) : info_(std::move(info)), fn_(std::move(fn)) {}

  Allocation operator()(const Profile& profile) const {
    if (info_.agents && profile.agents() != *info_.agents) {
      throw ConstraintError(info_.name + " requires " + std::to_string(*info_.agents) + " agents");
    }
    if (info_.kind && profile.kind() != *info_.kind) return fn_(profile.with_kind(*info_.kind));
    return fn_(profile);
  }

  const MechanismInfo& info() const { return info_; }
  const std::string& name() const { return info_.name; }

 private:
  MechanismInfo info_;
  Fn fn_;
};

using IntegralMechanism = Mechanism<IntegralAllocation>;
using FractionalMechanism = Mechanism<FractionalAllocation>;

}  // namespace fairdiv

#endif  // FAIRDIV_MECHANISM_HPP_
