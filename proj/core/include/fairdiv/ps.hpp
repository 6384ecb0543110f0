#ifndef FAIRDIV_PS_HPP_
#define FAIRDIV_PS_HPP_

#include <string_view>

#include "fairdiv/allocation.hpp"
#include "fairdiv/mechanism.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/schedule.hpp"

namespace fairdiv {

// How an agent facing several equally preferred available items eats.
//   kLowestIndex: the lowest-index one at unit speed.
//   kProportionalSplit: all of them at equal speed (recorded as consecutive
//   sub-segments inside each event interval).
enum class TieBreak { kLowestIndex, kProportionalSplit };
std::string_view to_string(TieBreak tiebreak);
TieBreak parse_tiebreak(std::string_view text);

struct PsResult {
  FractionalAllocation allocation;
  EatingSchedule schedule;
};

// Probabilistic serial under profile.kind(): goods eaters go for the highest
// value, chores eaters for the lowest cost. Exact event-driven simulation
// over [0, m/n].
PsResult ps_run(const Profile& profile, TieBreak tiebreak = TieBreak::kLowestIndex);

FractionalMechanism ps_mechanism(TieBreak tiebreak = TieBreak::kLowestIndex);

}  // namespace fairdiv

#endif  // FAIRDIV_PS_HPP_
