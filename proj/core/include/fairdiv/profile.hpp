#ifndef FAIRDIV_PROFILE_HPP_
#define FAIRDIV_PROFILE_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class ItemKind { kGoods, kChores };
enum class Divisibility { kIndivisible, kDivisible };

std::string_view to_string(ItemKind kind);
std::string_view to_string(Divisibility div);
ItemKind opposite(ItemKind kind);

// Additive valuation profile: values[i][o] is agent i's utility for good o,
// or cost of chore o, depending on kind(). Entries are non-negative.
class Profile {
 public:
  Profile(ItemKind kind, Divisibility divisibility, std::vector<std::vector<Rational>> values,
          bool normalized = false);

  ItemKind kind() const { return kind_; }
  Divisibility divisibility() const { return divisibility_; }
  bool normalized() const { return normalized_; }
  std::size_t agents() const { return agents_; }
  std::size_t items() const { return items_; }

  const Rational& value(std::size_t agent, std::size_t item) const;
  std::span<const Rational> row(std::size_t agent) const;
  std::vector<std::vector<Rational>> rows() const;
  // v_i(O) or c_i(O).
  Rational total(std::size_t agent) const;
  Rational max_entry() const;

  // Same matrix with agent's row replaced; used for misreports.
  Profile with_row(std::size_t agent, std::span<const Rational> row) const;
  Profile with_kind(ItemKind kind) const;
  Profile with_divisibility(Divisibility div) const;
  // Columns reordered so that new column permutation[o] holds old column o.
  Profile permute_items(std::span<const std::size_t> permutation) const;
  // Rows reordered so that new row k holds old row order[k].
  Profile reorder_agents(std::span<const std::size_t> order) const;

  // True iff agent "a" strictly prefers item x to item y under kind().
  bool prefers(std::size_t agent, std::size_t x, std::size_t y) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  ItemKind kind_;
  Divisibility divisibility_;
  bool normalized_;
  std::size_t agents_;
  std::size_t items_;
  std::vector<Rational> values_;  // row-major
};

}  // namespace fairdiv

#endif  // FAIRDIV_PROFILE_HPP_
