#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "fairdiv/builtins.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/picking_exchange.hpp"
#include "fairdiv/strategic.hpp"
#include "fairdiv/transforms.hpp"
#include "test_util.hpp"

namespace fairdiv {
namespace {

using testing::chores;
using testing::goods;
using testing::R;

constexpr auto kDiv = Divisibility::kDivisible;

IntegralMechanism goods_constant(std::vector<std::size_t> owner_pattern) {
  MechanismInfo info;
  info.name = "constant";
  info.kind = ItemKind::kGoods;
  info.agents = 2;
  return IntegralMechanism(info, [owner_pattern](const Profile& p) {
    std::vector<std::size_t> owner(p.items());
    for (std::size_t o = 0; o < p.items(); ++o) owner[o] = owner_pattern[o % owner_pattern.size()];
    return IntegralAllocation::from_owners(owner, 2);
  });
}

FractionalMechanism fractional_of(std::string name, ItemKind kind,
                                  std::function<FractionalAllocation(const Profile&)> fn,
                                  std::optional<std::size_t> agents = std::nullopt) {
  MechanismInfo info;
  info.name = std::move(name);
  info.kind = kind;
  info.divisibility = kDiv;
  info.agents = agents;
  return FractionalMechanism(info, std::move(fn));
}

TEST(SwapTwoAgent, AgentOneTakesAll) {
  const IntegralMechanism swapped = swap_two_agent(goods_constant({0}));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const Profile c = testing::random_profile(rng, ItemKind::kChores, 2, 3);
    const IntegralAllocation a = swapped(c);
    EXPECT_TRUE(a.bundle(0).empty());
    EXPECT_EQ(a.bundle(1).size(), 3U);
  }
}

TEST(SwapTwoAgent, RequiresTwoAgents) {
  const IntegralMechanism swapped = swap_two_agent(goods_constant({0}));
  EXPECT_THROW(swapped(chores({{1}, {1}, {1}})), ConstraintError);
}

TEST(SwapTwoAgent, BundlesAreComplementsOfGoodsRun) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const PickingExchangeConfig cfg = random_config(testing::pick(rng, 1, 5), rng);
    const IntegralMechanism g = picking_exchange_mechanism(cfg, ItemKind::kGoods);
    const Profile c = testing::random_profile(rng, ItemKind::kChores, 2, cfg.items());
    const IntegralAllocation mg = g(c.with_kind(ItemKind::kGoods));
    const IntegralAllocation mc = swap_two_agent(g)(c);
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<std::size_t> complement;
      for (std::size_t o = 0; o < c.items(); ++o) {
        if (mg.owner(o) != i) complement.push_back(o);
      }
      EXPECT_EQ(mc.bundle(i), complement);
    }
  }
}

// Worst per-instance MMS ratios transfer as alpha <-> 2 - alpha whenever the
// chores MMS is exactly half the total cost.
TEST(SwapTwoAgent, MmsRatioTransferOnTightInstances) {
  const Profile g = goods({{2, 1, 1}, {2, 1, 1}});
  const IntegralAllocation in_goods({{1}, {0, 2}}, 3);
  const Rational alpha = bundle_value(g, 0, in_goods.bundle(0)) / mms_value(g, 0, 2);
  const Profile c = g.with_kind(ItemKind::kChores);
  const IntegralAllocation in_chores = in_goods.swapped();
  const Rational beta = bundle_value(c, 0, in_chores.bundle(0)) / mms_value(c, 0, 2);
  EXPECT_EQ(alpha, R(1, 2));
  EXPECT_EQ(beta, R(2) - alpha);
}

TEST(SwapTwoAgent, MmsRatioTransferIsAnInequality) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const Profile g = testing::random_profile(rng, ItemKind::kGoods, 2, testing::pick(rng, 1, 5));
    std::vector<std::size_t> owner(g.items());
    for (auto& o : owner) o = testing::pick(rng, 0, 1);
    const IntegralAllocation a = IntegralAllocation::from_owners(owner, 2);
    const Profile c = g.with_kind(ItemKind::kChores);
    for (std::size_t i = 0; i < 2; ++i) {
      const Rational mg = mms_value(g, i, 2), mc = mms_value(c, i, 2);
      if (mg.is_zero() || mc.is_zero()) continue;
      const Rational alpha = bundle_value(g, i, a.bundle(i)) / mg;
      const Rational beta = bundle_value(c, i, a.swapped().bundle(i)) / mc;
      if (alpha > R(1)) continue;
      EXPECT_LE(beta, R(2) - alpha);
    }
  }
}

TEST(DivisibleChoreTransform, NonPORemarkInstance) {
  const FractionalMechanism g = fractional_of("o1-to-1-o2-to-3", ItemKind::kGoods, [](const Profile&) {
    return testing::fractional({{R(1), R(0)}, {R(0), R(0)}, {R(0), R(1)}});
  });
  const Profile c = chores({{1, 0}, {1, 0}, {0, 1}}, kDiv);
  const FractionalAllocation x = divisible_chore_transform(g)(c);
  EXPECT_EQ(x, testing::fractional({{R(0), R(1, 2)}, {R(1, 2), R(1, 2)}, {R(1, 2), R(0)}}));
  EXPECT_FALSE(check_po_bruteforce(c, x).holds());
}

TEST(DivisibleChoreTransform, TwoAgentComplement) {
  const FractionalMechanism g = fractional_of("fixed", ItemKind::kGoods, [](const Profile&) {
    return testing::fractional({{R(1, 3), R(1)}, {R(2, 3), R(0)}});
  });
  const FractionalAllocation x = divisible_chore_transform(g)(chores({{1, 1}, {1, 1}}, kDiv));
  EXPECT_EQ(x, testing::fractional({{R(2, 3), R(0)}, {R(1, 3), R(1)}}));
}

TEST(DivisibleChoreTransform, UniformIsFixedPoint) {
  const FractionalMechanism u = *builtin_fractional("equal-split");
  for (std::size_t n = 2; n <= 5; ++n) {
    const Profile c(ItemKind::kChores, kDiv, std::vector<std::vector<Rational>>(n, std::vector<Rational>(3, R(1))));
    EXPECT_EQ(divisible_chore_transform(u)(c), FractionalAllocation::uniform(n, 3));
  }
}

TEST(DivisibleChoreTransform, CostIdentityAndColumnSums) {
  std::mt19937_64 rng(6);
  const FractionalMechanism ps = *builtin_fractional("ps");
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = testing::pick(rng, 2, 4);
    const Profile c = testing::random_profile(rng, ItemKind::kChores, n, testing::pick(rng, 1, 5), kDiv);
    MechanismInfo info = ps.info();
    info.kind = ItemKind::kGoods;
    const FractionalMechanism g(info, [ps](const Profile& p) { return ps(p); });
    const FractionalAllocation xg = g(c);
    const FractionalAllocation xc = divisible_chore_transform(g)(c);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(bundle_value(c, i, xc.bundle(i)),
                (c.total(i) - bundle_value(c, i, xg.bundle(i))) / Rational(static_cast<long>(n - 1)));
    }
  }
}

TEST(DivisibleChoreTransform, RequiresTwoAgents) {
  const FractionalMechanism u = *builtin_fractional("equal-split");
  EXPECT_THROW(divisible_chore_transform(u)(chores({{1}}, kDiv)), ConstraintError);
}

// Truthfulness of the inner mechanism on a grid carries over to the chores
// reading of the transform.
TEST(DivisibleChoreTransform, TruthfulnessTransfersOnGrid) {
  const FractionalMechanism sd = *builtin_fractional("half-bundle");
  MechanismInfo info = sd.info();
  info.kind = ItemKind::kGoods;
  const FractionalMechanism g(info, [sd](const Profile& p) { return sd(p); });
  const FractionalMechanism c = divisible_chore_transform(g);
  const std::vector<Rational> grid{R(0), R(1), R(2)};
  const auto reports = grid_reports(grid, 3);
  for (const Profile& p : grid_profiles(ItemKind::kChores, 2, 3, grid)) {
    const Profile d = p.with_divisibility(kDiv);
    for (std::size_t i = 0; i < 2; ++i) {
      if (!manipulation_search(g, d.with_kind(ItemKind::kGoods), i, reports).truthful()) continue;
      EXPECT_TRUE(manipulation_search(c, d, i, reports).truthful());
    }
  }
}

TEST(Symmetrize, ConstantMechanismAverages) {
  const FractionalMechanism first_item = fractional_of(
      "agent-1-takes-o1", ItemKind::kChores,
      [](const Profile&) { return testing::fractional({{R(1), R(0)}, {R(0), R(1)}}); }, 2);
  const FractionalAllocation x = symmetrize(first_item)(chores({{1, 2}, {3, 5}}, kDiv));
  // Each summand gives agent 1 one full item under the relabeling.
  EXPECT_EQ(x, FractionalAllocation::uniform(2, 2));
}

TEST(Symmetrize, AlreadySymmetricIsUnchanged) {
  const FractionalMechanism u = *builtin_fractional("equal-split");
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    const Profile c = testing::random_profile(rng, ItemKind::kChores, 2, 4, kDiv);
    EXPECT_EQ(symmetrize(u)(c), u(c));
  }
}

TEST(Symmetrize, AnonymousAndItemSymmetric) {
  const FractionalMechanism ps = *builtin_fractional("ps");
  const FractionalMechanism s = symmetrize(ps);
  std::mt19937_64 rng(10);
  for (int k = 0; k < 20; ++k) {
    const Profile c = testing::random_profile(rng, ItemKind::kChores, 2, 4, kDiv);
    const FractionalAllocation x = s(c);
    const std::vector<std::size_t> swap{1, 0};
    const FractionalAllocation y = s(c.reorder_agents(swap));
    std::vector<std::size_t> sigma{2, 0, 3, 1};
    const FractionalAllocation z = s(c.permute_items(sigma));
    for (std::size_t o = 0; o < 4; ++o) {
      EXPECT_EQ(x.share(0, o), y.share(1, o));
      EXPECT_EQ(x.share(0, o), z.share(0, sigma[o]));
    }
  }
}

TEST(Symmetrize, GuardsLargeInstances) {
  const FractionalMechanism u = *builtin_fractional("equal-split");
  const Profile c(ItemKind::kChores, kDiv, std::vector<std::vector<Rational>>(2, std::vector<Rational>(7, R(1))));
  EXPECT_THROW(symmetrize(u)(c), ResourceError);
}

TEST(DualProfile, BiValuedFlips) {
  const Profile c = chores({{2, 1}, {1, 2}}, kDiv);
  const Profile d = dual_profile(c, R(3));
  EXPECT_EQ(d.kind(), ItemKind::kGoods);
  EXPECT_EQ(d.value(0, 0), R(1));
  EXPECT_EQ(d.value(0, 1), R(2));
}

TEST(DualProfile, BoundaryAndInvolution) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 50; ++k) {
    const Profile p = testing::random_profile(rng, ItemKind::kGoods, 3, 4);
    const Profile d = dual_profile(p, p.max_entry());
    bool zero = false;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t o = 0; o < 4; ++o) zero = zero || d.value(i, o).is_zero();
    }
    EXPECT_TRUE(zero);
    const Rational t = p.max_entry() + R(1, 3);
    EXPECT_EQ(dual_profile(dual_profile(p, t), t), p);
  }
  EXPECT_THROW(dual_profile(goods({{1, 4}}), R(3)), DomainError);
}

}  // namespace
}  // namespace fairdiv
