#ifndef FAIRDIV_LOTTERY_HPP_
#define FAIRDIV_LOTTERY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/schedule.hpp"

namespace fairdiv {

// Goods reading of a chores PS run, padded with dummy items so that the
// item count is a multiple of n. Dummy items are the last columns.
struct PaddedInstance {
  Profile profile;
  FractionalAllocation allocation;
  EatingSchedule schedule;
  std::size_t real_items = 0;
};

// Real items are re-read as goods worth pivot - c_i(o) (pivot = largest cost,
// or 1 if all costs are zero). With m = kn + r and r > 0, n - r dummies worth
// 2 * pivot are appended; each agent eats 1/n of dummy d during
// [d/n, (d+1)/n] and the original schedule is shifted by (n - r)/n.
PaddedInstance pad_schedule(const Profile& chores, const FractionalAllocation& x, const EatingSchedule& schedule);

// Square matrix with row i*K + s (agent i, slot s, K = duration) holding the
// agent's consumption of each item during [s, s+1).
struct SlotMatrix {
  RationalMatrix matrix;
  std::size_t agents = 0;
  std::size_t slots = 0;

  std::size_t row(std::size_t agent, std::size_t slot) const { return agent * slots + slot; }
  std::size_t agent_of(std::size_t row) const { return row / slots; }
  std::size_t slot_of(std::size_t row) const { return row % slots; }
};

// Throws InvariantError unless the duration is an integer and the matrix
// comes out square.
SlotMatrix slot_matrix(const EatingSchedule& padded);

struct BirkhoffTerm {
  Rational weight;
  std::vector<std::size_t> assignment;  // row -> column
};

// Repeatedly extracts the lexicographically smallest perfect matching on the
// positive support and subtracts its bottleneck weight. Throws DomainError
// (naming a Hall violator) if the matrix is not doubly stochastic.
std::vector<BirkhoffTerm> birkhoff_decompose(const RationalMatrix& matrix);

// One realized allocation with each agent's items in slot order.
struct SlottedOutcome {
  Rational probability;
  IntegralAllocation allocation;
  // slotted[i] = (slot, item) pairs of agent i's real items, by slot.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> slotted;
};

struct ImplementedLottery {
  Lottery lottery;
  std::vector<SlottedOutcome> outcomes;  // parallel to lottery.outcomes()
  std::size_t slots = 0;
};

// pad -> slot matrix -> Birkhoff -> strip dummies. `schedule` must be a valid
// chores PS run realizing x; otherwise ConstraintError.
ImplementedLottery implement_lottery(const Profile& chores, const FractionalAllocation& x,
                                     const EatingSchedule& schedule);

// Slot structure of an implemented lottery: within each bundle costs weakly
// increase with the slot, and an item in slot s of agent i costs i no more
// than any item in slot s + 1 of another agent.
CheckReport check_slot_structure(const Profile& chores, const ImplementedLottery& implemented);

struct LabelingTally {
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::vector<std::string> failures;  // first few, with the outcome index
};

struct LotteryReport {
  std::vector<std::string> marginal_violations;
  std::vector<std::string> size_violations;
  // Labeling conditions with the cross-bundle range k in [min(|A_i|,|A_j|) - 1]
  // (enough for EF1) and k in [|A_j| - 1].
  LabelingTally labeling_short_range;
  LabelingTally labeling_full_range;
  std::vector<std::string> ef1_violations;

  bool holds() const {
    return marginal_violations.empty() && size_violations.empty() && labeling_short_range.fails == 0 &&
           ef1_violations.empty();
  }
};

// Whether the bundles admit labels o_i^1.. with
//   (1) c_i(o_i^k) <= c_i(o_i^{k+1}),
//   (2) c_i(o_i^k) <= c_i(o_j^{k+1}) when |A_i| <= |A_j|, k up to the range,
//   (3) c_i(o_i^k) <= c_i(o_j^k) when |A_i| > |A_j|, k in [|A_j|].
// Decided exactly: (1) fixes each agent's own cost sequence, so the labels of
// each bundle can be chosen independently by a matching inside its tie blocks.
// Returns the first obstruction, or nullopt if labels exist.
std::optional<std::string> find_labeling_obstruction(const Profile& chores, const IntegralAllocation& alloc,
                                                     bool full_range);

// Requires a chores profile (ConstraintError otherwise).
LotteryReport verify_lottery(const Profile& chores, const FractionalAllocation& x, const Lottery& lottery);

}  // namespace fairdiv

#endif  // FAIRDIV_LOTTERY_HPP_
