#include "fairdiv/profile.hpp"

#include <algorithm>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {

std::string_view to_string(ItemKind kind) { return kind == ItemKind::kGoods ? "goods" : "chores"; }

std::string_view to_string(Divisibility div) {
  return div == Divisibility::kDivisible ? "divisible" : "indivisible";
}

ItemKind opposite(ItemKind kind) {
  return kind == ItemKind::kGoods ? ItemKind::kChores : ItemKind::kGoods;
}

Profile::Profile(ItemKind kind, Divisibility divisibility, std::vector<std::vector<Rational>> values,
                 bool normalized)
    : kind_(kind), divisibility_(divisibility), normalized_(normalized), agents_(values.size()) {
  if (agents_ == 0) throw InvariantError("profile needs at least one agent");
  items_ = values.front().size();
  if (items_ == 0) throw InvariantError("profile needs at least one item");
  values_.reserve(agents_ * items_);
  for (std::size_t i = 0; i < agents_; ++i) {
    if (values[i].size() != items_) {
      throw InvariantError("row " + std::to_string(i) + " has " + std::to_string(values[i].size()) +
                           " entries, expected " + std::to_string(items_));
    }
    for (std::size_t o = 0; o < items_; ++o) {
      if (values[i][o].sign() < 0) {
        throw DomainError("negative value at agent " + std::to_string(i) + ", item " +
                          std::to_string(o));
      }
      values_.push_back(std::move(values[i][o]));
    }
  }
  if (normalized_ && divisibility_ == Divisibility::kDivisible) {
    for (std::size_t i = 0; i < agents_; ++i) {
      if (total(i) != Rational(1)) {
        throw InvariantError("normalized profile: row " + std::to_string(i) + " sums to " +
                             total(i).to_string());
      }
    }
  }
}

const Rational& Profile::value(std::size_t agent, std::size_t item) const {
  if (agent >= agents_) throw IndexError("agent index " + std::to_string(agent) + " out of range");
  if (item >= items_) throw IndexError("item index " + std::to_string(item) + " out of range");
  return values_[agent * items_ + item];
}

std::span<const Rational> Profile::row(std::size_t agent) const {
  if (agent >= agents_) throw IndexError("agent index " + std::to_string(agent) + " out of range");
  return {values_.data() + agent * items_, items_};
}

std::vector<std::vector<Rational>> Profile::rows() const {
  std::vector<std::vector<Rational>> out;
  out.reserve(agents_);
  for (std::size_t i = 0; i < agents_; ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

Rational Profile::total(std::size_t agent) const {
  Rational sum;
  for (const auto& v : row(agent)) sum += v;
  return sum;
}

Rational Profile::max_entry() const { return *std::max_element(values_.begin(), values_.end()); }

Profile Profile::with_row(std::size_t agent, std::span<const Rational> new_row) const {
  if (new_row.size() != items_) throw InvariantError("replacement row has wrong length");
  auto r = rows();
  r.at(agent).assign(new_row.begin(), new_row.end());
  return Profile(kind_, divisibility_, std::move(r), false);
}

Profile Profile::with_kind(ItemKind kind) const {
  Profile p = *this;
  p.kind_ = kind;
  return p;
}

Profile Profile::with_divisibility(Divisibility div) const {
  Profile p = *this;
  p.divisibility_ = div;
  return p;
}

Profile Profile::permute_items(std::span<const std::size_t> permutation) const {
  if (permutation.size() != items_) throw InvariantError("permutation has wrong length");
  Profile p = *this;
  for (std::size_t i = 0; i < agents_; ++i) {
    for (std::size_t o = 0; o < items_; ++o) {
      p.values_[i * items_ + permutation[o]] = values_[i * items_ + o];
    }
  }
  return p;
}

Profile Profile::reorder_agents(std::span<const std::size_t> order) const {
  if (order.size() != agents_) throw InvariantError("agent order has wrong length");
  std::vector<std::vector<Rational>> r;
  r.reserve(agents_);
  for (std::size_t k = 0; k < agents_; ++k) {
    auto src = row(order[k]);
    r.emplace_back(src.begin(), src.end());
  }
  return Profile(kind_, divisibility_, std::move(r), normalized_);
}

bool Profile::prefers(std::size_t agent, std::size_t x, std::size_t y) const {
  return kind_ == ItemKind::kGoods ? value(agent, x) > value(agent, y)
                                   : value(agent, x) < value(agent, y);
}

}  // namespace fairdiv
