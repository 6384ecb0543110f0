#ifndef FAIRDIV_PICKING_EXCHANGE_HPP_
#define FAIRDIV_PICKING_EXCHANGE_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/mechanism.hpp"
#include "fairdiv/profile.hpp"

namespace fairdiv {

// What to do with a deal that is neither favorable nor unfavorable.
enum class NeutralPolicy { kNever, kAlways, kSeeded };
std::string_view to_string(NeutralPolicy policy);
NeutralPolicy parse_neutral_policy(std::string_view text);

// Agent 1 gives `give` (a subset of Y1) and receives `take` (a subset of Y2).
struct ExchangeDeal {
  std::vector<std::size_t> give;
  std::vector<std::size_t> take;

  friend bool operator==(const ExchangeDeal&, const ExchangeDeal&) = default;
};

// Two-agent picking-exchange mechanism. Items are split into the picking
// cells X1, X2 and the exchange cells Y1, Y2. Agent i picks one offer from
// offers_i (subsets of X_i covering it, with empty common intersection); the
// rest of X_i goes to the other agent.
// Agent 1 starts with Y1, agent 2 with Y2, and the executed deals move items
// across.
struct PickingExchangeConfig {
  std::vector<std::size_t> x1, x2, y1, y2;
  std::vector<std::vector<std::size_t>> offers1, offers2;
  std::vector<ExchangeDeal> deals;
  NeutralPolicy neutral = NeutralPolicy::kNever;
  std::uint64_t seed = 0;

  std::size_t items() const { return x1.size() + x2.size() + y1.size() + y2.size(); }
  friend bool operator==(const PickingExchangeConfig&, const PickingExchangeConfig&) = default;
};

// Every structural violation; empty iff the configuration is valid for m items.
std::vector<std::string> validate_config(const PickingExchangeConfig& config, std::size_t items);
// Throws ConfigError listing the violations.
void require_valid(const PickingExchangeConfig& config, std::size_t items);

enum class DealStatus { kFavorable, kUnfavorable, kNeutral };
std::string_view to_string(DealStatus status);

// Goods: favorable iff v1(T) > v1(S) and v2(T) < v2(S); unfavorable iff
// v1(T) < v1(S) or v2(T) > v2(S). Chores use the reversed inequalities.
DealStatus classify_deal(const Profile& profile, const ExchangeDeal& deal);

// Whether the deal at `index` with the given status is executed.
bool deal_executed(const PickingExchangeConfig& config, std::size_t index, DealStatus status);

// Index of the offer agent picks (best under profile.kind(), lowest index on ties).
std::size_t chosen_offer(const std::vector<std::vector<std::size_t>>& offers, const Profile& profile,
                         std::size_t agent);

// Runs the mechanism under profile.kind(). Throws ConfigError for invalid
// configurations and ConstraintError unless the profile has two agents.
IntegralAllocation run_picking_exchange(const PickingExchangeConfig& config, const Profile& profile);

// Dual mechanism: X cells kept, every offer S of agent i replaced by X_i \ S,
// deals reversed (T_k, S_k) on the swapped exchange cells (Y2, Y1).
PickingExchangeConfig dualize_config(const PickingExchangeConfig& config);

IntegralMechanism picking_exchange_mechanism(PickingExchangeConfig config, ItemKind kind);

// Random valid configuration on m items; used by property tests and audits.
PickingExchangeConfig random_config(std::size_t items, std::mt19937_64& rng);

}  // namespace fairdiv

#endif  // FAIRDIV_PICKING_EXCHANGE_HPP_
