#include "fairdiv/builtins.hpp"

#include <string>
#include <vector>

#include "fairdiv/bivalued.hpp"
#include "fairdiv/ps.hpp"

namespace fairdiv {

std::vector<std::string> builtin_names() {
  return {"equal-split", "ps", "ps-proportional", "bivalued", "half-bundle", "utilitarian", "all-to-one"};
}

std::optional<SwapDictatorConfig> swap_dictator_preset(std::string_view name, std::size_t items) {
  if (name == "equal-split") return SwapDictatorConfig{{std::vector<Rational>(items, Rational(1, 2))}, true};
  if (name == "half-bundle") {
    std::vector<Rational> generator(items);
    for (std::size_t o = 0; o < items / 2; ++o) generator[o] = Rational(1);
    return SwapDictatorConfig{{std::move(generator)}, true};
  }
  return std::nullopt;
}

std::optional<FractionalMechanism> builtin_fractional(std::string_view name) {
  MechanismInfo info;
  info.name = std::string(name);
  info.divisibility = Divisibility::kDivisible;
  if (name == "equal-split") {
    return FractionalMechanism(std::move(info), [](const Profile& profile) {
      return FractionalAllocation::uniform(profile.agents(), profile.items());
    });
  }
  if (name == "ps") return ps_mechanism(TieBreak::kLowestIndex);
  if (name == "ps-proportional") return ps_mechanism(TieBreak::kProportionalSplit);
  if (name == "bivalued") return bivalued_mechanism();
  if (name == "half-bundle") {
    info.agents = 2;
    return FractionalMechanism(std::move(info), [](const Profile& profile) {
      return swap_dictatorial(*swap_dictator_preset("half-bundle", profile.items()), profile);
    });
  }
  return std::nullopt;
}

std::optional<IntegralMechanism> builtin_integral(std::string_view name) {
  MechanismInfo info;
  info.name = std::string(name);
  if (name == "utilitarian") {
    // Each item to an agent valuing it most (goods) or costing least (chores).
    return IntegralMechanism(std::move(info), [](const Profile& profile) {
      std::vector<std::size_t> owner(profile.items(), 0);
      for (std::size_t o = 0; o < profile.items(); ++o) {
        for (std::size_t i = 1; i < profile.agents(); ++i) {
          const Rational& best = profile.value(owner[o], o);
          const Rational& v = profile.value(i, o);
          if (profile.kind() == ItemKind::kGoods ? v > best : v < best) owner[o] = i;
        }
      }
      return IntegralAllocation::from_owners(std::move(owner), profile.agents());
    });
  }
  if (name == "all-to-one") {
    return IntegralMechanism(std::move(info), [](const Profile& profile) {
      return IntegralAllocation::from_owners(std::vector<std::size_t>(profile.items(), 0), profile.agents());
    });
  }
  return std::nullopt;
}

}  // namespace fairdiv
