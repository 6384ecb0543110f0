#include "fairdiv/swap_dictatorial.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {
namespace {

// Optimal coordinate permutation of `bundle` for agent's row.
std::vector<Rational> rearrange(const std::vector<Rational>& bundle, const Profile& profile,
                                std::size_t agent) {
  const std::size_t m = bundle.size();
  const bool goods = profile.kind() == ItemKind::kGoods;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Rational& va = profile.value(agent, a);
    const Rational& vb = profile.value(agent, b);
    return goods ? va > vb : va < vb;
  });
  std::vector<Rational> entries(bundle);
  std::sort(entries.begin(), entries.end(), std::greater<>());
  std::vector<Rational> out(m);
  for (std::size_t k = 0; k < m; ++k) out[order[k]] = entries[k];
  return out;
}

}  // namespace

void require_valid(const SwapDictatorConfig& config, std::size_t items) {
  if (config.bundles.empty()) throw ConfigError("swap-dictatorial choice set D is empty");
  for (std::size_t k = 0; k < config.bundles.size(); ++k) {
    const auto& bundle = config.bundles[k];
    if (bundle.size() != items) {
      throw ConfigError("bundle " + std::to_string(k) + " has " + std::to_string(bundle.size()) +
                        " entries, expected " + std::to_string(items));
    }
    for (const auto& x : bundle) {
      if (x.sign() < 0 || x > Rational(1)) {
        throw ConfigError("bundle " + std::to_string(k) + " has entry " + x.to_string() + " outside [0,1]");
      }
    }
  }
}

std::vector<Rational> dictator_choice(const SwapDictatorConfig& config, const Profile& profile,
                                      std::size_t agent) {
  require_valid(config, profile.items());
  const bool goods = profile.kind() == ItemKind::kGoods;
  std::vector<Rational> best;
  Rational best_value;
  for (std::size_t k = 0; k < config.bundles.size(); ++k) {
    std::vector<Rational> candidate =
        config.symmetric_closure ? rearrange(config.bundles[k], profile, agent) : config.bundles[k];
    Rational v = bundle_value(profile, agent, std::span<const Rational>(candidate));
    if (k == 0 || (goods ? v > best_value : v < best_value)) {
      best = std::move(candidate);
      best_value = std::move(v);
    }
  }
  return best;
}

FractionalAllocation swap_dictatorial(const SwapDictatorConfig& config, const Profile& profile) {
  if (profile.agents() != 2) throw ConstraintError("swap-dictatorial mechanisms need exactly two agents");
  const std::vector<Rational> x1 = dictator_choice(config, profile, 0);
  const std::vector<Rational> x2 = dictator_choice(config, profile, 1);
  const std::size_t m = profile.items();
  RationalMatrix shares(2, m);
  const Rational half(1, 2);
  for (std::size_t o = 0; o < m; ++o) {
    shares.at(0, o) = (x1[o] + Rational(1) - x2[o]) * half;
    shares.at(1, o) = Rational(1) - shares.at(0, o);
  }
  return FractionalAllocation(std::move(shares));
}

FractionalMechanism swap_dictatorial_mechanism(SwapDictatorConfig config, ItemKind kind, std::string name) {
  MechanismInfo info;
  info.name = std::move(name);
  info.kind = kind;
  info.divisibility = Divisibility::kDivisible;
  info.agents = 2;
  return FractionalMechanism(std::move(info), [config = std::move(config)](const Profile& profile) {
    return swap_dictatorial(config, profile);
  });
}

std::vector<std::vector<Rational>> fixed_size_bundles(std::size_t items, std::size_t size) {
  std::vector<std::vector<Rational>> out;
  if (size > items) return out;
  std::vector<std::size_t> pick(size);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<Rational> bundle(items);
    for (std::size_t o : pick) bundle[o] = Rational(1);
    out.push_back(std::move(bundle));
    std::size_t k = size;
    while (k > 0 && pick[k - 1] == items - size + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace fairdiv
