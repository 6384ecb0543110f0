#ifndef FAIRDIV_SCHEDULE_HPP_
#define FAIRDIV_SCHEDULE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

struct EatingSegment {
  std::size_t item = 0;
  Rational start;
  Rational end;

  Rational length() const { return end - start; }
  friend bool operator==(const EatingSegment&, const EatingSegment&) = default;
};

// Per-agent eating timelines of a probabilistic-serial style run.
class EatingSchedule {
 public:
  EatingSchedule(std::size_t agents, std::size_t items, Rational duration);

  std::size_t agents() const { return segments_.size(); }
  std::size_t items() const { return items_; }
  const Rational& duration() const { return duration_; }

  // Extends agent's timeline by `length` on `item`, merging with the previous
  // segment when it is the same item. Zero lengths are ignored.
  void append(std::size_t agent, std::size_t item, const Rational& length);
  const std::vector<EatingSegment>& segments(std::size_t agent) const { return segments_.at(agent); }
  // End of agent's timeline so far.
  Rational clock(std::size_t agent) const;

  // consumption(i, o) = total time agent i spends eating o.
  RationalMatrix consumption() const;

  // Every violated invariant, empty iff the schedule is a valid complete
  // eating run for `profile`: contiguous timelines covering [0, duration],
  // item totals exactly one, per-agent weakly decreasing preference, and no
  // agent eats an item while a strictly preferred one has positive remainder.
  std::vector<std::string> validate(const Profile& profile) const;

  friend bool operator==(const EatingSchedule&, const EatingSchedule&) = default;

 private:
  std::size_t items_;
  Rational duration_;
  std::vector<std::vector<EatingSegment>> segments_;
};

}  // namespace fairdiv

#endif  // FAIRDIV_SCHEDULE_HPP_
