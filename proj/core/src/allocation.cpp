#include "fairdiv/allocation.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {

RationalMatrix::RationalMatrix(const std::vector<std::vector<Rational>>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvariantError("ragged matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Rational RationalMatrix::row_sum(std::size_t r) const {
  Rational s;
  for (const auto& v : row(r)) s += v;
  return s;
}

Rational RationalMatrix::col_sum(std::size_t c) const {
  Rational s;
  for (std::size_t r = 0; r < rows_; ++r) s += at(r, c);
  return s;
}

std::vector<std::vector<Rational>> RationalMatrix::to_rows() const {
  std::vector<std::vector<Rational>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.emplace_back(row(r).begin(), row(r).end());
  return out;
}

IntegralAllocation::IntegralAllocation(std::vector<std::vector<std::size_t>> bundles, std::size_t items)
    : bundles_(std::move(bundles)), owner_(items, static_cast<std::size_t>(-1)) {
  if (bundles_.empty()) throw InvariantError("allocation needs at least one agent");
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    std::sort(bundles_[i].begin(), bundles_[i].end());
    for (std::size_t o : bundles_[i]) {
      if (o >= items) throw InvariantError("item " + std::to_string(o) + " out of range");
      if (owner_[o] != static_cast<std::size_t>(-1)) {
        throw InvariantError("item " + std::to_string(o) + " assigned twice");
      }
      owner_[o] = i;
    }
  }
  for (std::size_t o = 0; o < items; ++o) {
    if (owner_[o] == static_cast<std::size_t>(-1)) {
      throw InvariantError("item " + std::to_string(o) + " unassigned");
    }
  }
}

IntegralAllocation IntegralAllocation::from_owners(std::vector<std::size_t> owner, std::size_t agents) {
  IntegralAllocation a;
  a.bundles_.assign(agents, {});
  for (std::size_t o = 0; o < owner.size(); ++o) {
    if (owner[o] >= agents) throw InvariantError("owner index out of range");
    a.bundles_[owner[o]].push_back(o);
  }
  a.owner_ = std::move(owner);
  return a;
}

IntegralAllocation IntegralAllocation::swapped() const {
  if (agents() != 2) throw ConstraintError("swapped() needs exactly two agents");
  return IntegralAllocation({bundles_[1], bundles_[0]}, items());
}

FractionalAllocation::FractionalAllocation(RationalMatrix shares) : shares_(std::move(shares)) {
  if (shares_.rows() == 0 || shares_.cols() == 0) throw InvariantError("empty allocation");
  for (std::size_t o = 0; o < shares_.cols(); ++o) {
    Rational col;
    for (std::size_t i = 0; i < shares_.rows(); ++i) {
      const auto& v = shares_.at(i, o);
      if (v.sign() < 0 || v > Rational(1)) {
        throw InvariantError("share of agent " + std::to_string(i) + " in item " + std::to_string(o) +
                             " is " + v.to_string());
      }
      col += v;
    }
    if (col != Rational(1)) {
      throw InvariantError("item " + std::to_string(o) + " allocated " + col.to_string() + " != 1");
    }
  }
}

FractionalAllocation FractionalAllocation::from(const IntegralAllocation& alloc) {
  RationalMatrix m(alloc.agents(), alloc.items());
  for (std::size_t o = 0; o < alloc.items(); ++o) m.at(alloc.owner(o), o) = 1;
  return FractionalAllocation(std::move(m));
}

FractionalAllocation FractionalAllocation::uniform(std::size_t agents, std::size_t items) {
  RationalMatrix m(agents, items);
  const Rational share = Rational(1) / Rational(static_cast<long>(agents));
  for (std::size_t i = 0; i < agents; ++i) {
    for (std::size_t o = 0; o < items; ++o) m.at(i, o) = share;
  }
  return FractionalAllocation(std::move(m));
}

Lottery::Lottery(std::vector<LotteryOutcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw InvariantError("lottery has no outcomes");
  Rational total;
  for (const auto& out : outcomes_) {
    if (out.probability.sign() <= 0) throw InvariantError("non-positive lottery probability");
    if (out.allocation.agents() != agents() || out.allocation.items() != items()) {
      throw InvariantError("lottery outcomes over different agent/item sets");
    }
    total += out.probability;
  }
  if (total != Rational(1)) throw InvariantError("lottery probabilities sum to " + total.to_string());
}

const LotteryOutcome& Lottery::sample_at(const Rational& u) const {
  Rational cumulative;
  for (const auto& out : outcomes_) {
    cumulative += out.probability;
    if (u < cumulative) return out;
  }
  return outcomes_.back();
}

const LotteryOutcome& Lottery::sample(std::uint64_t seed) const {
  std::mt19937_64 gen(seed);
  const std::uint64_t draw = gen();
  // u = draw / 2^64, built exactly.
  Rational u = Rational::parse(std::to_string(draw) + "/18446744073709551616");
  return sample_at(u);
}

Rational bundle_value(const Profile& profile, std::size_t agent, const FractionalBundle& bundle) {
  Rational sum;
  for (const auto& [item, fraction] : bundle) {
    if (fraction.sign() < 0 || fraction > Rational(1)) {
      throw DomainError("fraction " + fraction.to_string() + " outside [0,1]");
    }
    sum += fraction * profile.value(agent, item);
  }
  return sum;
}

Rational bundle_value(const Profile& profile, std::size_t agent, std::span<const std::size_t> items) {
  Rational sum;
  for (std::size_t o : items) sum += profile.value(agent, o);
  return sum;
}

Rational bundle_value(const Profile& profile, std::size_t agent, std::span<const Rational> shares) {
  if (shares.size() != profile.items()) throw IndexError("dense bundle length mismatch");
  auto row = profile.row(agent);
  Rational sum;
  for (std::size_t o = 0; o < shares.size(); ++o) {
    if (!shares[o].is_zero() && !row[o].is_zero()) sum += shares[o] * row[o];
  }
  return sum;
}

FractionalAllocation lottery_marginals(const Lottery& lottery) {
  RationalMatrix m(lottery.agents(), lottery.items());
  for (const auto& out : lottery.outcomes()) {
    for (std::size_t o = 0; o < lottery.items(); ++o) m.at(out.allocation.owner(o), o) += out.probability;
  }
  return FractionalAllocation(std::move(m));
}

}  // namespace fairdiv
