#ifndef FAIRDIV_BIVALUED_HPP_
#define FAIRDIV_BIVALUED_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/mechanism.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/schedule.hpp"

namespace fairdiv {

// Profile whose entries all lie in {high, low}, high > low > 0.
//
// An item is "preferred" by an agent when it is worth `high` (goods) or costs
// `low` (chores). Agents with no preferred item at all are re-read as
// preferring every item; under either kind such a row is constant, so the
// rewrite changes no preference.
class BiValuedProfile {
 public:
  // Throws DomainError unless high > low > 0 and every entry is one of them.
  BiValuedProfile(Profile profile, Rational high, Rational low);
  // Reads high/low off the entries. Throws ConstraintError when the profile
  // has fewer or more than two distinct entries.
  static BiValuedProfile detect(Profile profile);

  const Profile& profile() const { return profile_; }
  ItemKind kind() const { return profile_.kind(); }
  std::size_t agents() const { return profile_.agents(); }
  std::size_t items() const { return profile_.items(); }
  const Rational& high() const { return high_; }
  const Rational& low() const { return low_; }
  // L = m / n.
  Rational share_size() const;

  bool preferred(std::size_t agent, std::size_t item) const { return preferred_[agent][item]; }
  bool rewritten(std::size_t agent) const { return rewritten_[agent]; }
  // Items no agent prefers (H_v on the goods reading).
  std::vector<bool> unwanted_items() const;

  // Entry-wise (high + low) - value; preferred sets are unchanged.
  BiValuedProfile dual() const;

 private:
  Profile profile_;
  Rational high_;
  Rational low_;
  std::vector<std::vector<bool>> preferred_;
  std::vector<bool> rewritten_;
};

// Maximizer x' of prod_i (preferred mass of i) over partial allocations that
// only hand out preferred items; unwanted items stay unallocated.
struct WaterFill {
  RationalMatrix shares;                    // x'
  std::vector<Rational> levels;             // y_i = |x'_i|
  std::vector<std::vector<std::size_t>> groups;  // frozen agent groups, increasing level
  std::vector<bool> unallocated;            // H_v
};

WaterFill mnw_waterfill(const BiValuedProfile& profile);

struct Redistribution {
  RationalMatrix truncated;       // x''
  std::vector<bool> oversized;    // Z = {i : |x'_i| > L}
  std::vector<Rational> leftover; // beta_o
  FractionalAllocation allocation;
};

// Cuts every bundle above L = m/n down to size L, dropping mass from the
// highest-index items first, then hands each leftover beta_o out in
// proportion to L - |x''_i|.
Redistribution truncate_and_redistribute(const RationalMatrix& partial, const BiValuedProfile& profile);

struct ScheduleOutcome {
  std::optional<EatingSchedule> schedule;
  std::vector<std::string> diagnostics;
};

// Eating schedule realizing `target` as a probabilistic-serial run on the
// profile: every agent first eats its preferred part in increasing item
// order, then the rest in increasing item order. The schedule is validated
// before it is returned; on failure only diagnostics are returned.
ScheduleOutcome ps_schedule_for_target(const BiValuedProfile& profile, const FractionalAllocation& target);

struct BiValuedOutcome {
  FractionalAllocation allocation;
  EatingSchedule schedule;
  WaterFill waterfill;
  Redistribution redistribution;
  std::optional<EquilibriumCertificate> certificate;  // chores only
};

// Goods: water-fill, truncate, redistribute, schedule. Throws InvariantError
// if no valid schedule is found.
BiValuedOutcome bivalued_goods_mechanism(const BiValuedProfile& profile);
// Chores: the goods mechanism on the dual with pivot high + low, plus a
// market-equilibrium certificate.
BiValuedOutcome bivalued_chores_mechanism(const BiValuedProfile& profile);

// Allocation only, skipping the schedule; same output as the full pipeline.
FractionalAllocation bivalued_allocation(const BiValuedProfile& profile);

// Prices, budgets and ratios for the chores outcome computed from the goods
// water-fill of the dual.
EquilibriumCertificate bivalued_certificate(const BiValuedProfile& chores, const WaterFill& waterfill,
                                            const Redistribution& redistribution);

// Structure of the water-fill relative to L:
//  (a) the holders of any item are all above L or all at most L;
//  (b) an item held by an agent above L is not preferred by any agent at most L.
CheckReport char_mnw_structure_check(const WaterFill& waterfill, const BiValuedProfile& profile);

// Mechanism on bi-valued profiles of either kind; `high`/`low` fix the two
// values when a profile uses only one of them.
FractionalMechanism bivalued_mechanism(std::optional<Rational> high = std::nullopt,
                                       std::optional<Rational> low = std::nullopt);

}  // namespace fairdiv

#endif  // FAIRDIV_BIVALUED_HPP_
