#include "fairdiv/ps.hpp"

#include <optional>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {

std::string_view to_string(TieBreak tiebreak) {
  return tiebreak == TieBreak::kLowestIndex ? "lowest-index" : "proportional-split";
}

TieBreak parse_tiebreak(std::string_view text) {
  if (text == "lowest-index") return TieBreak::kLowestIndex;
  if (text == "proportional-split") return TieBreak::kProportionalSplit;
  throw ParseError("tiebreak", "expected lowest-index or proportional-split, got '" + std::string(text) + "'");
}

PsResult ps_run(const Profile& profile, TieBreak tiebreak) {
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  const bool goods = profile.kind() == ItemKind::kGoods;
  const Rational duration(static_cast<long>(m), static_cast<long>(n));
  EatingSchedule schedule(n, m, duration);

  std::vector<Rational> remaining(m, Rational(1));
  Rational now(0);
  while (now < duration) {
    // Each agent's current top tier among available items.
    std::vector<std::vector<std::size_t>> tier(n);
    std::vector<Rational> rate(m);
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<std::size_t> best;
      for (std::size_t o = 0; o < m; ++o) {
        if (remaining[o].sign() <= 0) continue;
        if (!best) {
          best = o;
          tier[i] = {o};
          continue;
        }
        const Rational& v = profile.value(i, o);
        const Rational& b = profile.value(i, *best);
        if (goods ? v > b : v < b) {
          best = o;
          tier[i] = {o};
        } else if (v == b && tiebreak == TieBreak::kProportionalSplit) {
          tier[i].push_back(o);
        }
      }
      if (tier[i].empty()) throw InvariantError("ps_run: agent has nothing left to eat before the end");
      const Rational share(1, static_cast<long>(tier[i].size()));
      for (std::size_t o : tier[i]) rate[o] += share;
    }
    Rational step = duration - now;
    for (std::size_t o = 0; o < m; ++o) {
      if (rate[o].sign() > 0) step = min(step, remaining[o] / rate[o]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Rational piece = step / Rational(static_cast<long>(tier[i].size()));
      for (std::size_t o : tier[i]) schedule.append(i, o, piece);
    }
    for (std::size_t o = 0; o < m; ++o) {
      if (rate[o].sign() > 0) remaining[o] -= rate[o] * step;
    }
    now += step;
  }
  FractionalAllocation allocation(schedule.consumption());
  return {std::move(allocation), std::move(schedule)};
}

FractionalMechanism ps_mechanism(TieBreak tiebreak) {
  MechanismInfo info;
  info.name = std::string("ps/") + std::string(to_string(tiebreak));
  info.divisibility = Divisibility::kDivisible;
  return FractionalMechanism(std::move(info),
                             [tiebreak](const Profile& profile) { return ps_run(profile, tiebreak).allocation; });
}

}  // namespace fairdiv
