#include "fairdiv/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {

IntegralMechanism swap_two_agent(const IntegralMechanism& mech) {
  MechanismInfo info = mech.info();
  const ItemKind inner = info.kind.value_or(ItemKind::kGoods);
  info.name = "swap(" + info.name + ")";
  info.kind = opposite(inner);
  info.agents = 2;
  return IntegralMechanism(std::move(info), [mech, inner](const Profile& profile) {
    return mech(profile.with_kind(inner)).swapped();
  });
}

FractionalMechanism divisible_chore_transform(const FractionalMechanism& mech) {
  MechanismInfo info = mech.info();
  const ItemKind inner = info.kind.value_or(ItemKind::kGoods);
  info.name = "complement(" + info.name + ")";
  info.kind = opposite(inner);
  info.divisibility = Divisibility::kDivisible;
  return FractionalMechanism(std::move(info), [mech, inner](const Profile& profile) {
    const std::size_t n = profile.agents();
    if (n < 2) throw ConstraintError("divisible chore transform needs at least two agents");
    const FractionalAllocation goods = mech(profile.with_kind(inner));
    const Rational denom(static_cast<long>(n - 1));
    RationalMatrix shares(n, profile.items());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t o = 0; o < profile.items(); ++o) {
        shares.at(i, o) = (Rational(1) - goods.share(i, o)) / denom;
      }
    }
    return FractionalAllocation(std::move(shares));
  });
}

FractionalMechanism symmetrize(const FractionalMechanism& mech) {
  MechanismInfo info = mech.info();
  info.name = "symmetrize(" + info.name + ")";
  info.agents = 2;
  info.divisibility = Divisibility::kDivisible;
  return FractionalMechanism(std::move(info), [mech](const Profile& profile) {
    const std::size_t m = profile.items();
    if (m > kSymmetrizeMaxItems) {
      throw ResourceError("symmetrize enumerates m! relabelings; m = " + std::to_string(m) +
                          " exceeds " + std::to_string(kSymmetrizeMaxItems));
    }
    const std::vector<std::size_t> swap_agents = {1, 0};
    std::vector<std::size_t> sigma(m);
    std::iota(sigma.begin(), sigma.end(), 0);
    RationalMatrix acc(2, m);
    long count = 0;
    do {
      // c^sigma(sigma(o)) = c(o).
      const Profile relabeled = profile.permute_items(sigma);
      const FractionalAllocation straight = mech(relabeled);
      const FractionalAllocation crossed = mech(relabeled.reorder_agents(swap_agents));
      for (std::size_t o = 0; o < m; ++o) {
        const std::size_t s = sigma[o];
        acc.at(0, o) += straight.share(0, s) + crossed.share(1, s);
        acc.at(1, o) += straight.share(1, s) + crossed.share(0, s);
      }
      ++count;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    const Rational denom(2 * count);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t o = 0; o < m; ++o) acc.at(i, o) /= denom;
    }
    return FractionalAllocation(std::move(acc));
  });
}

Profile dual_profile(const Profile& profile, const Rational& pivot) {
  if (pivot < profile.max_entry()) {
    throw DomainError("pivot " + pivot.to_string() + " is below the largest entry " +
                      profile.max_entry().to_string());
  }
  std::vector<std::vector<Rational>> rows = profile.rows();
  for (auto& row : rows) {
    for (auto& v : row) v = pivot - v;
  }
  // Normalization is not preserved by pivoting.
  return Profile(opposite(profile.kind()), profile.divisibility(), std::move(rows));
}

}  // namespace fairdiv
