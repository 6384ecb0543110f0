#ifndef FAIRDIV_ALLOCATION_HPP_
#define FAIRDIV_ALLOCATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fairdiv/profile.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// Dense rows x cols matrix of rationals with no invariant of its own. Used for
// partial allocations, slot matrices and anything else that is "almost" an
// allocation.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit RationalMatrix(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Rational row_sum(std::size_t r) const;
  Rational col_sum(std::size_t c) const;
  std::vector<std::vector<Rational>> to_rows() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Partition of the items {0..m-1} among n agents.
class IntegralAllocation {
 public:
  // Throws InvariantError unless the bundles are disjoint and cover 0..items-1.
  IntegralAllocation(std::vector<std::vector<std::size_t>> bundles, std::size_t items);
  // owner[o] = agent receiving item o.
  static IntegralAllocation from_owners(std::vector<std::size_t> owner, std::size_t agents);

  std::size_t agents() const { return bundles_.size(); }
  std::size_t items() const { return owner_.size(); }
  const std::vector<std::size_t>& bundle(std::size_t agent) const { return bundles_.at(agent); }
  const std::vector<std::vector<std::size_t>>& bundles() const { return bundles_; }
  std::size_t owner(std::size_t item) const { return owner_.at(item); }
  const std::vector<std::size_t>& owners() const { return owner_; }

  // Bundles with agents 0 and 1 exchanged (two-agent only).
  IntegralAllocation swapped() const;

  friend bool operator==(const IntegralAllocation& a, const IntegralAllocation& b) {
    return a.bundles_ == b.bundles_ && a.owner_ == b.owner_;
  }
  friend auto operator<=>(const IntegralAllocation& a, const IntegralAllocation& b) {
    return a.bundles_ <=> b.bundles_;
  }

 private:
  IntegralAllocation() = default;
  std::vector<std::vector<std::size_t>> bundles_;  // each sorted ascending
  std::vector<std::size_t> owner_;
};

// n x m shares in [0,1] with every column summing to exactly one.
class FractionalAllocation {
 public:
  // Throws InvariantError if an entry is outside [0,1] or a column sum != 1.
  explicit FractionalAllocation(RationalMatrix shares);
  static FractionalAllocation from(const IntegralAllocation& alloc);
  static FractionalAllocation uniform(std::size_t agents, std::size_t items);

  std::size_t agents() const { return shares_.rows(); }
  std::size_t items() const { return shares_.cols(); }
  const Rational& share(std::size_t agent, std::size_t item) const { return shares_.at(agent, item); }
  std::span<const Rational> bundle(std::size_t agent) const { return shares_.row(agent); }
  // |x_i| = sum of shares of agent i.
  Rational size(std::size_t agent) const { return shares_.row_sum(agent); }
  const RationalMatrix& shares() const { return shares_; }

  friend bool operator==(const FractionalAllocation&, const FractionalAllocation&) = default;

 private:
  RationalMatrix shares_;
};

struct LotteryOutcome {
  Rational probability;
  IntegralAllocation allocation;
};

// Finite distribution over integral allocations of the same item set.
class Lottery {
 public:
  // Throws InvariantError unless probabilities are positive, sum to one and
  // all allocations share (agents, items).
  explicit Lottery(std::vector<LotteryOutcome> outcomes);

  const std::vector<LotteryOutcome>& outcomes() const { return outcomes_; }
  std::size_t agents() const { return outcomes_.front().allocation.agents(); }
  std::size_t items() const { return outcomes_.front().allocation.items(); }

  // Draws one outcome by exact inversion of the cumulative distribution at
  // the dyadic point u / 2^64, u taken from a 64-bit generator seeded with
  // `seed`.
  const LotteryOutcome& sample(std::uint64_t seed) const;
  const LotteryOutcome& sample_at(const Rational& u) const;

 private:
  std::vector<LotteryOutcome> outcomes_;
};

// Sparse fractional bundle: (item, fraction) pairs.
using FractionalBundle = std::vector<std::pair<std::size_t, Rational>>;

// sum_o fraction(o) * values[agent][o]. Throws IndexError on bad indices and
// DomainError on fractions outside [0,1].
Rational bundle_value(const Profile& profile, std::size_t agent, const FractionalBundle& bundle);
Rational bundle_value(const Profile& profile, std::size_t agent, std::span<const std::size_t> items);
// Dense bundle of length m.
Rational bundle_value(const Profile& profile, std::size_t agent, std::span<const Rational> shares);

// x_i(o) = Pr[o in A_i].
FractionalAllocation lottery_marginals(const Lottery& lottery);

}  // namespace fairdiv

#endif  // FAIRDIV_ALLOCATION_HPP_
