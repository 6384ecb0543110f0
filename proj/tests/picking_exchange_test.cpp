#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/picking_exchange.hpp"
#include "fairdiv/strategic.hpp"
#include "fairdiv/transforms.hpp"
#include "test_util.hpp"

namespace fairdiv {
namespace {

using testing::chores;
using testing::goods;
using testing::R;

PickingExchangeConfig picking_only(std::vector<std::size_t> x1, std::vector<std::vector<std::size_t>> offers1) {
  PickingExchangeConfig cfg;
  cfg.x1 = std::move(x1);
  cfg.offers1 = std::move(offers1);
  cfg.offers2 = {{}};
  return cfg;
}

PickingExchangeConfig exchange_only() {
  PickingExchangeConfig cfg;
  cfg.y1 = {0};
  cfg.y2 = {1};
  cfg.offers1 = {{}};
  cfg.offers2 = {{}};
  cfg.deals = {{{0}, {1}}};
  return cfg;
}

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

TEST(ValidateConfig, DisjointOffersOk) {
  EXPECT_TRUE(validate_config(picking_only({0, 1}, {{0}, {1}}), 2).empty());
}

TEST(ValidateConfig, SingleCoveringOfferIntersects) {
  EXPECT_TRUE(mentions(validate_config(picking_only({0, 1}, {{0, 1}}), 2), "intersection nonempty"));
}

TEST(ValidateConfig, OverlappingDealsViolateValidity) {
  PickingExchangeConfig cfg = exchange_only();
  cfg.y1 = {0, 2};
  cfg.deals.push_back({{0}, {1}});
  EXPECT_TRUE(mentions(validate_config(cfg, 3), "validity"));
  EXPECT_THROW(require_valid(cfg, 3), ConfigError);
}

TEST(ValidateConfig, CellsMustPartitionItems) {
  PickingExchangeConfig cfg = picking_only({0, 1}, {{0}, {1}});
  EXPECT_FALSE(validate_config(cfg, 3).empty());
  cfg.y1 = {1};
  EXPECT_FALSE(validate_config(cfg, 2).empty());
}

TEST(ValidateConfig, RandomConfigsAreValid) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const std::size_t m = testing::pick(rng, 1, 6);
    const PickingExchangeConfig cfg = random_config(m, rng);
    EXPECT_TRUE(validate_config(cfg, m).empty());
    EXPECT_TRUE(validate_config(dualize_config(cfg), m).empty());
  }
}

TEST(ClassifyDeal, GoodsCases) {
  const ExchangeDeal deal{{0}, {1}};
  EXPECT_EQ(classify_deal(goods({{1, 2}, {2, 1}}), deal), DealStatus::kFavorable);
  EXPECT_EQ(classify_deal(goods({{2, 1}, {0, 0}}), deal), DealStatus::kUnfavorable);
  EXPECT_EQ(classify_deal(goods({{2, 1}, {9, 0}}), deal), DealStatus::kUnfavorable);
  EXPECT_EQ(classify_deal(goods({{1, 1}, {3, 3}}), deal), DealStatus::kNeutral);
  EXPECT_THROW(classify_deal(goods({{1, 1}}), deal), ConstraintError);
}

TEST(ClassifyDeal, GoodsFavorableIffReversedChoresFavorable) {
  const std::vector<Rational> grid{R(0), R(1), R(2)};
  const ExchangeDeal deal{{0, 1}, {2}};
  const ExchangeDeal reversed{{2}, {0, 1}};
  for (const Profile& p : grid_profiles(ItemKind::kGoods, 2, 3, grid)) {
    const DealStatus g = classify_deal(p, deal);
    const DealStatus c = classify_deal(p.with_kind(ItemKind::kChores), reversed);
    EXPECT_EQ(g == DealStatus::kFavorable, c == DealStatus::kFavorable);
    EXPECT_EQ(g == DealStatus::kNeutral, c == DealStatus::kNeutral);
  }
}

TEST(RunPickingExchange, PurePickingChores) {
  const IntegralAllocation a = run_picking_exchange(picking_only({0, 1}, {{0}, {1}}), chores({{1, 2}, {5, 5}}));
  EXPECT_EQ(a.bundle(0), std::vector<std::size_t>{0});
  EXPECT_EQ(a.bundle(1), std::vector<std::size_t>{1});
}

TEST(RunPickingExchange, PureExchange) {
  const IntegralAllocation fav = run_picking_exchange(exchange_only(), chores({{2, 1}, {1, 2}}));
  EXPECT_EQ(fav.bundle(0), std::vector<std::size_t>{1});
  const IntegralAllocation unfav = run_picking_exchange(exchange_only(), chores({{1, 2}, {1, 2}}));
  EXPECT_EQ(unfav.bundle(0), std::vector<std::size_t>{0});
}

TEST(RunPickingExchange, NeutralPolicies) {
  PickingExchangeConfig cfg = exchange_only();
  const Profile tie = chores({{1, 1}, {1, 1}});
  cfg.neutral = NeutralPolicy::kNever;
  EXPECT_EQ(run_picking_exchange(cfg, tie).bundle(0), std::vector<std::size_t>{0});
  cfg.neutral = NeutralPolicy::kAlways;
  EXPECT_EQ(run_picking_exchange(cfg, tie).bundle(0), std::vector<std::size_t>{1});
  cfg.neutral = NeutralPolicy::kSeeded;
  const bool executed = deal_executed(cfg, 0, DealStatus::kNeutral);
  EXPECT_EQ(run_picking_exchange(cfg, tie).bundle(0), std::vector<std::size_t>{executed ? 1U : 0U});
  EXPECT_TRUE(deal_executed(cfg, 0, DealStatus::kFavorable));
  EXPECT_FALSE(deal_executed(cfg, 0, DealStatus::kUnfavorable));
}

TEST(RunPickingExchange, ErrorsOnBadInput) {
  EXPECT_THROW(run_picking_exchange(picking_only({0, 1}, {{0, 1}}), chores({{1, 2}, {1, 2}})), ConfigError);
  EXPECT_THROW(run_picking_exchange(picking_only({0, 1}, {{0}, {1}}), chores({{1, 2}})), ConstraintError);
}

TEST(RunPickingExchange, OutputIsPartition) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 300; ++k) {
    const PickingExchangeConfig cfg = random_config(testing::pick(rng, 1, 6), rng);
    const Profile p = testing::random_profile(rng, k % 2 ? ItemKind::kGoods : ItemKind::kChores, 2, cfg.items());
    const IntegralAllocation a = run_picking_exchange(cfg, p);
    EXPECT_EQ(a.bundle(0).size() + a.bundle(1).size(), cfg.items());
  }
}

TEST(RunPickingExchange, TruthfulOnGrid) {
  std::mt19937_64 rng(25);
  const std::vector<Rational> grid{R(0), R(1), R(2), R(3)};
  for (int k = 0; k < 6; ++k) {
    const PickingExchangeConfig cfg = random_config(3, rng);
    const ItemKind kind = k % 2 ? ItemKind::kGoods : ItemKind::kChores;
    const IntegralMechanism mech = picking_exchange_mechanism(cfg, kind);
    const auto reports = grid_reports(grid, 3);
    for (int t = 0; t < 15; ++t) {
      const Profile p = random_grid_profile(kind, 2, 3, grid, rng);
      for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(manipulation_search(mech, p, i, reports).truthful());
    }
  }
}

TEST(DualizeConfig, ComplementsOffersAndReversesDeals) {
  PickingExchangeConfig cfg = picking_only({0, 1}, {{0}, {1}});
  cfg.y1 = {2};
  cfg.y2 = {3};
  cfg.deals = {{{2}, {3}}};
  const PickingExchangeConfig d = dualize_config(cfg);
  EXPECT_EQ(d.offers1, (std::vector<std::vector<std::size_t>>{{1}, {0}}));
  EXPECT_EQ(d.y1, std::vector<std::size_t>{3});
  EXPECT_EQ(d.y2, std::vector<std::size_t>{2});
  ASSERT_EQ(d.deals.size(), 1U);
  EXPECT_EQ(d.deals[0].give, std::vector<std::size_t>{3});
  EXPECT_EQ(d.deals[0].take, std::vector<std::size_t>{2});
}

TEST(DualizeConfig, Involution) {
  std::mt19937_64 rng(27);
  for (int k = 0; k < 200; ++k) {
    const PickingExchangeConfig cfg = random_config(testing::pick(rng, 1, 6), rng);
    EXPECT_EQ(dualize_config(dualize_config(cfg)), cfg);
  }
}

TEST(DualizeConfig, EquivalentToSwap) {
  std::mt19937_64 rng(29);
  const std::vector<Rational> grid{R(0), R(1), R(2)};
  for (int k = 0; k < 30; ++k) {
    const PickingExchangeConfig cfg = random_config(testing::pick(rng, 1, 4), rng);
    const PickingExchangeConfig dual = dualize_config(cfg);
    const IntegralMechanism swapped = swap_two_agent(picking_exchange_mechanism(cfg, ItemKind::kGoods));
    for (const Profile& c : grid_profiles(ItemKind::kChores, 2, cfg.items(), grid)) {
      EXPECT_EQ(run_picking_exchange(dual, c), swapped(c));
    }
  }
}

TEST(PeConfigJson, RoundTrip) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    const PickingExchangeConfig cfg = random_config(testing::pick(rng, 1, 6), rng);
    EXPECT_EQ(io::read_pe_config(io::write_pe_config(cfg)), cfg);
  }
  EXPECT_THROW(io::read_pe_config(R"({"x1":"o1"})"), ParseError);
  EXPECT_THROW(io::read_pe_config(R"({"deals":[{"give":[0]}]})"), ParseError);
  EXPECT_THROW(io::read_pe_config(R"({"neutral":"sometimes"})"), ParseError);
}

TEST(NeutralPolicyText, Parse) {
  EXPECT_EQ(parse_neutral_policy("seeded"), NeutralPolicy::kSeeded);
  EXPECT_EQ(to_string(NeutralPolicy::kAlways), "always");
  EXPECT_THROW(parse_neutral_policy("sometimes"), Error);
}

}  // namespace
}  // namespace fairdiv
