#include "fairdiv/bivalued.hpp"

#include <set>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/transforms.hpp"
#include "maxflow.hpp"

namespace fairdiv {

BiValuedProfile::BiValuedProfile(Profile profile, Rational high, Rational low)
    : profile_(std::move(profile)), high_(std::move(high)), low_(std::move(low)) {
  if (!(high_ > low_ && low_.sign() > 0)) {
    throw DomainError("bi-valued profile needs high > low > 0, got " + high_.to_string() + ", " + low_.to_string());
  }
  const std::size_t n = profile_.agents();
  const std::size_t m = profile_.items();
  const Rational& wanted = profile_.kind() == ItemKind::kGoods ? high_ : low_;
  preferred_.assign(n, std::vector<bool>(m, false));
  rewritten_.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t o = 0; o < m; ++o) {
      const Rational& v = profile_.value(i, o);
      if (v != high_ && v != low_) {
        throw DomainError("entry (" + std::to_string(i) + "," + std::to_string(o) + ") = " + v.to_string() +
                          " is neither " + high_.to_string() + " nor " + low_.to_string());
      }
      preferred_[i][o] = v == wanted;
      any = any || preferred_[i][o];
    }
    if (!any) {
      rewritten_[i] = true;
      preferred_[i].assign(m, true);
    }
  }
}

BiValuedProfile BiValuedProfile::detect(Profile profile) {
  std::set<Rational> distinct;
  for (std::size_t i = 0; i < profile.agents(); ++i) {
    for (const auto& v : profile.row(i)) distinct.insert(v);
  }
  if (distinct.size() != 2) {
    throw ConstraintError("profile has " + std::to_string(distinct.size()) +
                          " distinct entries; a bi-valued profile needs exactly two (or explicit high/low)");
  }
  Rational low = *distinct.begin();
  Rational high = *distinct.rbegin();
  return BiValuedProfile(std::move(profile), std::move(high), std::move(low));
}

Rational BiValuedProfile::share_size() const {
  return Rational(static_cast<long>(items()), static_cast<long>(agents()));
}

std::vector<bool> BiValuedProfile::unwanted_items() const {
  std::vector<bool> out(items(), true);
  for (std::size_t i = 0; i < agents(); ++i) {
    for (std::size_t o = 0; o < items(); ++o) {
      if (preferred_[i][o]) out[o] = false;
    }
  }
  return out;
}

BiValuedProfile BiValuedProfile::dual() const {
  return BiValuedProfile(dual_profile(profile_, high_ + low_), high_, low_);
}

WaterFill mnw_waterfill(const BiValuedProfile& profile) {
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  WaterFill out{RationalMatrix(n, m), std::vector<Rational>(n), {}, profile.unwanted_items()};

  std::vector<bool> agent_active(n, true);
  std::vector<bool> item_active(m);
  for (std::size_t o = 0; o < m; ++o) item_active[o] = !out.unallocated[o];
  const Rational big(static_cast<long>(m + 1));

  std::size_t active = n;
  while (active > 0) {
    auto neighborhood = [&](const std::vector<bool>& group) {
      long count = 0;
      for (std::size_t o = 0; o < m; ++o) {
        if (!item_active[o]) continue;
        for (std::size_t i = 0; i < n; ++i) {
          if (group[i] && profile.preferred(i, o)) {
            ++count;
            break;
          }
        }
      }
      return count;
    };

    // Dinkelbach descent on min_S |N(S)| / |S|.
    Rational level(neighborhood(agent_active), static_cast<long>(active));
    std::vector<bool> tight;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> agent_edges(n);
    std::optional<detail::MaxFlow> flow;
    while (true) {
      // Nodes: 0 source, 1 sink, 2..2+n agents, 2+n.. items.
      flow.emplace(2 + n + m);
      for (auto& e : agent_edges) e.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (!agent_active[i]) continue;
        flow->add_edge(0, 2 + i, level);
        for (std::size_t o = 0; o < m; ++o) {
          if (item_active[o] && profile.preferred(i, o)) {
            agent_edges[i].emplace_back(o, flow->add_edge(2 + i, 2 + n + o, big));
          }
        }
      }
      for (std::size_t o = 0; o < m; ++o) {
        if (item_active[o]) flow->add_edge(2 + n + o, 1, Rational(1));
      }
      const Rational value = flow->run(0, 1);
      const std::vector<bool> reach = flow->can_reach(1);
      tight.assign(n, false);
      long size = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (agent_active[i] && !reach[2 + i]) {
          tight[i] = true;
          ++size;
        }
      }
      if (value == level * Rational(static_cast<long>(active))) break;
      if (size == 0) throw InvariantError("water-fill: min cut without a violating agent group");
      level = Rational(neighborhood(tight), size);
    }

    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < n; ++i) {
      if (!tight[i]) continue;
      group.push_back(i);
      out.levels[i] = level;
      for (const auto& [o, edge] : agent_edges[i]) out.shares.at(i, o) = flow->flow(edge);
    }
    if (group.empty()) throw InvariantError("water-fill: no tight agent group at the optimal level");
    for (std::size_t o = 0; o < m; ++o) {
      if (!item_active[o]) continue;
      for (std::size_t i : group) {
        if (profile.preferred(i, o)) {
          item_active[o] = false;
          break;
        }
      }
    }
    for (std::size_t i : group) agent_active[i] = false;
    active -= group.size();
    out.groups.push_back(std::move(group));
  }
  return out;
}

Redistribution truncate_and_redistribute(const RationalMatrix& partial, const BiValuedProfile& profile) {
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  if (partial.rows() != n || partial.cols() != m) throw InvariantError("partial allocation shape mismatch");
  const Rational cap = profile.share_size();

  Redistribution out{partial, std::vector<bool>(n, false), std::vector<Rational>(m),
                     FractionalAllocation::uniform(n, m)};
  for (std::size_t i = 0; i < n; ++i) {
    Rational excess = partial.row_sum(i) - cap;
    if (excess.sign() <= 0) continue;
    out.oversized[i] = true;
    for (std::size_t o = m; o-- > 0 && excess.sign() > 0;) {
      const Rational cut = min(excess, out.truncated.at(i, o));
      out.truncated.at(i, o) -= cut;
      excess -= cut;
    }
  }
  std::vector<Rational> deficit(n);
  Rational total_deficit(0);
  for (std::size_t i = 0; i < n; ++i) {
    deficit[i] = cap - out.truncated.row_sum(i);
    total_deficit += deficit[i];
  }
  RationalMatrix shares = out.truncated;
  for (std::size_t o = 0; o < m; ++o) {
    out.leftover[o] = Rational(1) - out.truncated.col_sum(o);
    if (out.leftover[o].is_zero()) continue;
    if (total_deficit.is_zero()) throw InvariantError("leftover mass with no room to place it");
    for (std::size_t i = 0; i < n; ++i) shares.at(i, o) += out.leftover[o] * deficit[i] / total_deficit;
  }
  out.allocation = FractionalAllocation(std::move(shares));
  return out;
}

ScheduleOutcome ps_schedule_for_target(const BiValuedProfile& profile, const FractionalAllocation& target) {
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  ScheduleOutcome out;
  if (target.agents() != n || target.items() != m) {
    out.diagnostics.push_back("target shape does not match the profile");
    return out;
  }
  EatingSchedule schedule(n, m, profile.share_size());
  for (std::size_t i = 0; i < n; ++i) {
    for (int phase = 0; phase < 2; ++phase) {
      for (std::size_t o = 0; o < m; ++o) {
        if (profile.preferred(i, o) == (phase == 0)) schedule.append(i, o, target.share(i, o));
      }
    }
  }
  out.diagnostics = schedule.validate(profile.profile());
  if (out.diagnostics.empty() && FractionalAllocation(schedule.consumption()) != target) {
    out.diagnostics.push_back("schedule does not reproduce the target allocation");
  }
  if (out.diagnostics.empty()) out.schedule = std::move(schedule);
  return out;
}

namespace {

BiValuedOutcome run_pipeline(const BiValuedProfile& goods_reading, const BiValuedProfile& schedule_profile) {
  WaterFill waterfill = mnw_waterfill(goods_reading);
  Redistribution redistribution = truncate_and_redistribute(waterfill.shares, goods_reading);
  ScheduleOutcome scheduled = ps_schedule_for_target(schedule_profile, redistribution.allocation);
  if (!scheduled.schedule) {
    std::string msg = "no valid eating schedule for the bi-valued outcome:";
    for (const auto& d : scheduled.diagnostics) msg += "\n  " + d;
    throw InvariantError(msg);
  }
  FractionalAllocation allocation = redistribution.allocation;
  return {std::move(allocation), std::move(*scheduled.schedule), std::move(waterfill), std::move(redistribution),
          std::nullopt};
}

}  // namespace

BiValuedOutcome bivalued_goods_mechanism(const BiValuedProfile& profile) {
  if (profile.kind() != ItemKind::kGoods) throw ConstraintError("bivalued_goods_mechanism needs a goods profile");
  return run_pipeline(profile, profile);
}

BiValuedOutcome bivalued_chores_mechanism(const BiValuedProfile& profile) {
  if (profile.kind() != ItemKind::kChores) throw ConstraintError("bivalued_chores_mechanism needs a chores profile");
  BiValuedOutcome out = run_pipeline(profile.dual(), profile);
  out.certificate = bivalued_certificate(profile, out.waterfill, out.redistribution);
  return out;
}

FractionalAllocation bivalued_allocation(const BiValuedProfile& profile) {
  return truncate_and_redistribute(mnw_waterfill(profile).shares, profile).allocation;
}

EquilibriumCertificate bivalued_certificate(const BiValuedProfile& chores, const WaterFill& waterfill,
                                            const Redistribution& redistribution) {
  const std::size_t n = chores.agents();
  const std::size_t m = chores.items();
  const Rational cap = chores.share_size();
  EquilibriumCertificate cert;
  cert.prices.assign(m, chores.low());
  for (std::size_t o = 0; o < m; ++o) {
    if (waterfill.unallocated[o]) {
      cert.prices[o] = chores.high();
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (redistribution.oversized[i] && waterfill.shares.at(i, o).sign() > 0) cert.prices[o] = chores.high();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (redistribution.oversized[i]) {
      cert.budgets.push_back(chores.high() * cap);
    } else {
      const Rational& y = waterfill.levels[i];
      cert.budgets.push_back(chores.low() * y + chores.high() * (cap - y));
    }
    Rational ratio = chores.profile().value(i, 0) / cert.prices[0];
    for (std::size_t o = 1; o < m; ++o) ratio = min(ratio, chores.profile().value(i, o) / cert.prices[o]);
    cert.min_ratios.push_back(std::move(ratio));
  }
  return cert;
}

CheckReport char_mnw_structure_check(const WaterFill& waterfill, const BiValuedProfile& profile) {
  CheckReport report;
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  const Rational cap = profile.share_size();
  for (std::size_t o = 0; o < m; ++o) {
    std::vector<std::size_t> above, within;
    for (std::size_t i = 0; i < n; ++i) {
      if (waterfill.shares.at(i, o).sign() <= 0) continue;
      (waterfill.levels[i] > cap ? above : within).push_back(i);
    }
    if (!above.empty() && !within.empty()) {
      report.violations.push_back("item " + std::to_string(o) + " is held by agent " + std::to_string(above[0]) +
                                  " above L and by agent " + std::to_string(within[0]) + " at most L");
    }
    if (above.empty()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (waterfill.levels[j] <= cap && profile.preferred(j, o)) {
        report.violations.push_back("item " + std::to_string(o) + " is held above L yet preferred by agent " +
                                    std::to_string(j) + " at most L");
      }
    }
  }
  return report;
}

FractionalMechanism bivalued_mechanism(std::optional<Rational> high, std::optional<Rational> low) {
  MechanismInfo info;
  info.name = "bivalued";
  info.divisibility = Divisibility::kDivisible;
  return FractionalMechanism(std::move(info), [high, low](const Profile& profile) {
    if (high && low) return bivalued_allocation(BiValuedProfile(profile, *high, *low));
    return bivalued_allocation(BiValuedProfile::detect(profile));
  });
}

}  // namespace fairdiv
