#include "fairdiv/picking_exchange.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {
namespace {

std::string set_string(const std::vector<std::size_t>& items) {
  std::string out = "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(items[k]);
  }
  return out + "}";
}

void check_offers(const std::vector<std::vector<std::size_t>>& offers,
                  const std::vector<std::size_t>& cell, const std::string& name,
                  std::vector<std::string>& out) {
  if (offers.empty()) {
    out.push_back(name + ": offer set is empty");
    return;
  }
  const std::set<std::size_t> cell_set(cell.begin(), cell.end());
  std::set<std::size_t> covered;
  std::set<std::size_t> common(cell_set);
  for (std::size_t k = 0; k < offers.size(); ++k) {
    std::set<std::size_t> offer;
    for (std::size_t o : offers[k]) {
      if (!cell_set.count(o)) {
        out.push_back(name + ": offer " + std::to_string(k) + " contains item " + std::to_string(o) +
                      " outside its cell");
      }
      if (!offer.insert(o).second) {
        out.push_back(name + ": offer " + std::to_string(k) + " repeats item " + std::to_string(o));
      }
      covered.insert(o);
    }
    std::set<std::size_t> next;
    std::set_intersection(common.begin(), common.end(), offer.begin(), offer.end(),
                          std::inserter(next, next.begin()));
    common = std::move(next);
  }
  for (std::size_t o : cell_set) {
    if (!covered.count(o)) out.push_back(name + ": item " + std::to_string(o) + " is not covered");
  }
  if (!common.empty()) {
    out.push_back(name + ": intersection nonempty, " +
                  set_string(std::vector<std::size_t>(common.begin(), common.end())) +
                  " appears in every offer");
  }
}

void check_deal_side(const std::vector<ExchangeDeal>& deals, bool give_side,
                     const std::vector<std::size_t>& cell, std::vector<std::string>& out) {
  const std::string side = give_side ? "give" : "take";
  const std::string cell_name = give_side ? "Y1" : "Y2";
  const std::set<std::size_t> cell_set(cell.begin(), cell.end());
  std::set<std::size_t> used;
  for (std::size_t k = 0; k < deals.size(); ++k) {
    const auto& part = give_side ? deals[k].give : deals[k].take;
    if (part.empty()) out.push_back("deal " + std::to_string(k) + ": " + side + " side is empty");
    for (std::size_t o : part) {
      if (!cell_set.count(o)) {
        out.push_back("deal " + std::to_string(k) + ": item " + std::to_string(o) + " is not in " +
                      cell_name);
      }
      if (!used.insert(o).second) {
        out.push_back("deal " + std::to_string(k) + ": validity, item " + std::to_string(o) +
                      " is used by more than one " + side + " side");
      }
    }
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(NeutralPolicy policy) {
  switch (policy) {
    case NeutralPolicy::kNever: return "never";
    case NeutralPolicy::kAlways: return "always";
    case NeutralPolicy::kSeeded: return "seeded";
  }
  return "never";
}

NeutralPolicy parse_neutral_policy(std::string_view text) {
  if (text == "never") return NeutralPolicy::kNever;
  if (text == "always") return NeutralPolicy::kAlways;
  if (text == "seeded") return NeutralPolicy::kSeeded;
  throw ParseError("neutral", "expected never, always or seeded, got '" + std::string(text) + "'");
}

std::string_view to_string(DealStatus status) {
  switch (status) {
    case DealStatus::kFavorable: return "favorable";
    case DealStatus::kUnfavorable: return "unfavorable";
    case DealStatus::kNeutral: return "neutral";
  }
  return "neutral";
}

std::vector<std::string> validate_config(const PickingExchangeConfig& config, std::size_t items) {
  std::vector<std::string> out;
  std::vector<int> seen(items, 0);
  const std::vector<std::pair<const char*, const std::vector<std::size_t>*>> cells = {
      {"X1", &config.x1}, {"X2", &config.x2}, {"Y1", &config.y1}, {"Y2", &config.y2}};
  for (const auto& [name, cell] : cells) {
    for (std::size_t o : *cell) {
      if (o >= items) {
        out.push_back(std::string(name) + ": item " + std::to_string(o) + " out of range");
        continue;
      }
      if (++seen[o] == 2) out.push_back("item " + std::to_string(o) + " appears in more than one cell");
    }
  }
  for (std::size_t o = 0; o < items; ++o) {
    if (seen[o] == 0) out.push_back("item " + std::to_string(o) + " is in no cell");
  }
  check_offers(config.offers1, config.x1, "P1", out);
  check_offers(config.offers2, config.x2, "P2", out);
  check_deal_side(config.deals, true, config.y1, out);
  check_deal_side(config.deals, false, config.y2, out);
  return out;
}

void require_valid(const PickingExchangeConfig& config, std::size_t items) {
  const auto violations = validate_config(config, items);
  if (violations.empty()) return;
  std::string msg = "invalid picking-exchange config:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw ConfigError(msg);
}

DealStatus classify_deal(const Profile& profile, const ExchangeDeal& deal) {
  if (profile.agents() != 2) throw ConstraintError("exchange deals need exactly two agents");
  const Rational s1 = bundle_value(profile, 0, deal.give);
  const Rational t1 = bundle_value(profile, 0, deal.take);
  const Rational s2 = bundle_value(profile, 1, deal.give);
  const Rational t2 = bundle_value(profile, 1, deal.take);
  if (profile.kind() == ItemKind::kGoods) {
    if (t1 > s1 && t2 < s2) return DealStatus::kFavorable;
    if (t1 < s1 || t2 > s2) return DealStatus::kUnfavorable;
  } else {
    if (t1 < s1 && t2 > s2) return DealStatus::kFavorable;
    if (t1 > s1 || t2 < s2) return DealStatus::kUnfavorable;
  }
  return DealStatus::kNeutral;
}

bool deal_executed(const PickingExchangeConfig& config, std::size_t index, DealStatus status) {
  switch (status) {
    case DealStatus::kFavorable: return true;
    case DealStatus::kUnfavorable: return false;
    case DealStatus::kNeutral: break;
  }
  switch (config.neutral) {
    case NeutralPolicy::kNever: return false;
    case NeutralPolicy::kAlways: return true;
    case NeutralPolicy::kSeeded:
      // Depends on the seed and the deal index only, never on reports.
      return (splitmix64(config.seed ^ splitmix64(index)) & 1U) != 0;
  }
  return false;
}

std::size_t chosen_offer(const std::vector<std::vector<std::size_t>>& offers, const Profile& profile,
                         std::size_t agent) {
  const bool goods = profile.kind() == ItemKind::kGoods;
  std::size_t best = 0;
  Rational best_value = bundle_value(profile, agent, offers[0]);
  for (std::size_t k = 1; k < offers.size(); ++k) {
    const Rational v = bundle_value(profile, agent, offers[k]);
    if (goods ? v > best_value : v < best_value) {
      best = k;
      best_value = v;
    }
  }
  return best;
}

IntegralAllocation run_picking_exchange(const PickingExchangeConfig& config, const Profile& profile) {
  if (profile.agents() != 2) throw ConstraintError("picking-exchange mechanisms need exactly two agents");
  const std::size_t m = profile.items();
  require_valid(config, m);

  std::vector<std::size_t> owner(m, 1);
  // Picking: agent i takes its offer, the rest of X_i goes to the other agent.
  const std::vector<std::size_t>* cells[2] = {&config.x1, &config.x2};
  const std::vector<std::vector<std::size_t>>* offers[2] = {&config.offers1, &config.offers2};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& pick = (*offers[i])[chosen_offer(*offers[i], profile, i)];
    for (std::size_t o : *cells[i]) owner[o] = 1 - i;
    for (std::size_t o : pick) owner[o] = i;
  }
  // Exchange: agent 1 gets (Y1 \ U S_I) U (U T_I).
  for (std::size_t o : config.y1) owner[o] = 0;
  for (std::size_t o : config.y2) owner[o] = 1;
  for (std::size_t k = 0; k < config.deals.size(); ++k) {
    const ExchangeDeal& deal = config.deals[k];
    if (!deal_executed(config, k, classify_deal(profile, deal))) continue;
    for (std::size_t o : deal.give) owner[o] = 1;
    for (std::size_t o : deal.take) owner[o] = 0;
  }
  return IntegralAllocation::from_owners(std::move(owner), 2);
}

PickingExchangeConfig dualize_config(const PickingExchangeConfig& config) {
  require_valid(config, config.items());
  PickingExchangeConfig dual;
  dual.x1 = config.x1;
  dual.x2 = config.x2;
  auto complement = [](const std::vector<std::size_t>& cell, const std::vector<std::size_t>& offer) {
    std::vector<std::size_t> sorted_offer(offer);
    std::sort(sorted_offer.begin(), sorted_offer.end());
    std::vector<std::size_t> out;
    for (std::size_t o : cell) {
      if (!std::binary_search(sorted_offer.begin(), sorted_offer.end(), o)) out.push_back(o);
    }
    return out;
  };
  for (const auto& s : config.offers1) dual.offers1.push_back(complement(config.x1, s));
  for (const auto& s : config.offers2) dual.offers2.push_back(complement(config.x2, s));
  dual.y1 = config.y2;
  dual.y2 = config.y1;
  for (const auto& deal : config.deals) dual.deals.push_back({deal.take, deal.give});
  dual.neutral = config.neutral;
  dual.seed = config.seed;
  return dual;
}

IntegralMechanism picking_exchange_mechanism(PickingExchangeConfig config, ItemKind kind) {
  MechanismInfo info;
  info.name = std::string("picking-exchange/") + std::string(to_string(kind));
  info.kind = kind;
  info.agents = 2;
  info.seed = config.seed;
  return IntegralMechanism(std::move(info), [config = std::move(config)](const Profile& profile) {
    return run_picking_exchange(config, profile);
  });
}

PickingExchangeConfig random_config(std::size_t items, std::mt19937_64& rng) {
  PickingExchangeConfig config;
  std::uniform_int_distribution<int> cell_dist(0, 3);
  std::vector<std::size_t>* cells[4] = {&config.x1, &config.x2, &config.y1, &config.y2};
  for (std::size_t o = 0; o < items; ++o) cells[cell_dist(rng)]->push_back(o);

  // Offers: a random cover of the cell with empty common intersection.
  auto make_offers = [&rng](const std::vector<std::size_t>& cell) {
    std::vector<std::vector<std::size_t>> offers;
    if (cell.empty()) {
      offers.push_back({});
      return offers;
    }
    std::uniform_int_distribution<std::size_t> count_dist(2, std::max<std::size_t>(2, cell.size() + 1));
    const std::size_t count = count_dist(rng);
    offers.resize(count);
    std::bernoulli_distribution coin(0.4);
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    for (std::size_t o : cell) {
      // Each item lands in a random nonempty proper subset of the offers.
      const std::size_t forced_in = pick(rng);
      std::size_t forced_out = pick(rng);
      while (forced_out == forced_in) forced_out = pick(rng);
      for (std::size_t k = 0; k < count; ++k) {
        if (k == forced_in || (k != forced_out && coin(rng))) offers[k].push_back(o);
      }
    }
    return offers;
  };
  config.offers1 = make_offers(config.x1);
  config.offers2 = make_offers(config.x2);

  // Deals: chop random disjoint nonempty chunks from shuffled Y1 and Y2.
  std::vector<std::size_t> y1 = config.y1;
  std::vector<std::size_t> y2 = config.y2;
  std::shuffle(y1.begin(), y1.end(), rng);
  std::shuffle(y2.begin(), y2.end(), rng);
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < y1.size() && b < y2.size()) {
    std::uniform_int_distribution<std::size_t> len1(1, y1.size() - a);
    std::uniform_int_distribution<std::size_t> len2(1, y2.size() - b);
    const std::size_t l1 = std::min<std::size_t>(len1(rng), 2);
    const std::size_t l2 = std::min<std::size_t>(len2(rng), 2);
    ExchangeDeal deal;
    deal.give.assign(y1.begin() + a, y1.begin() + a + l1);
    deal.take.assign(y2.begin() + b, y2.begin() + b + l2);
    std::sort(deal.give.begin(), deal.give.end());
    std::sort(deal.take.begin(), deal.take.end());
    config.deals.push_back(std::move(deal));
    a += l1;
    b += l2;
    if (std::bernoulli_distribution(0.3)(rng)) break;
  }
  const int policy = std::uniform_int_distribution<int>(0, 2)(rng);
  config.neutral = static_cast<NeutralPolicy>(policy);
  config.seed = rng();
  return config;
}

}  // namespace fairdiv
