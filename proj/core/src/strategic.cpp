#include "fairdiv/strategic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/guard.hpp"

namespace fairdiv {
namespace {

// Calls fn(row) for every row in values^m.
template <class Fn>
void for_each_row(const std::vector<Rational>& values, std::size_t items, Fn&& fn) {
  std::vector<std::size_t> digit(items, 0);
  Row row(items, values.front());
  while (true) {
    fn(row);
    std::size_t k = items;
    while (k > 0 && digit[k - 1] + 1 == values.size()) {
      digit[k - 1] = 0;
      row[k - 1] = values[0];
      --k;
    }
    if (k == 0) return;
    ++digit[k - 1];
    row[k - 1] = values[digit[k - 1]];
  }
}

Rational outcome_value(const Profile& truth, std::size_t agent, const IntegralAllocation& alloc) {
  return bundle_value(truth, agent, alloc.bundle(agent));
}

Rational outcome_value(const Profile& truth, std::size_t agent, const FractionalAllocation& alloc) {
  return bundle_value(truth, agent, alloc.bundle(agent));
}

template <class Allocation>
ManipulationResult search(const Mechanism<Allocation>& mech, const Profile& profile, std::size_t agent,
                          const std::vector<Row>& reports) {
  if (agent >= profile.agents()) throw IndexError("agent " + std::to_string(agent) + " out of range");
  const bool goods = mech.info().kind.value_or(profile.kind()) == ItemKind::kGoods;
  const Profile truth = profile.with_kind(goods ? ItemKind::kGoods : ItemKind::kChores);
  const Rational honest = outcome_value(truth, agent, mech(profile));
  const auto truthful_row = profile.row(agent);
  ManipulationResult result;
  for (const Row& report : reports) {
    if (std::equal(report.begin(), report.end(), truthful_row.begin(), truthful_row.end())) continue;
    ++result.reports_checked;
    const Rational deviating = outcome_value(truth, agent, mech(profile.with_row(agent, report)));
    Rational gain = goods ? deviating - honest : honest - deviating;
    if (!result.best_gain || gain > *result.best_gain) {
      result.best_gain = std::move(gain);
      result.witness = report;
    }
  }
  return result;
}

}  // namespace

std::vector<Row> grid_reports(const std::vector<Rational>& values, std::size_t items) {
  if (values.empty()) throw DomainError("report grid needs at least one value");
  require_within_guard(values.size(), items, "report grid");
  std::vector<Row> out;
  for_each_row(values, items, [&](const Row& row) { out.push_back(row); });
  return out;
}

std::vector<Row> bivalued_reports(const Rational& high, const Rational& low, std::size_t items) {
  return grid_reports({low, high}, items);
}

ManipulationResult manipulation_search(const IntegralMechanism& mech, const Profile& profile, std::size_t agent,
                                       const std::vector<Row>& reports) {
  return search(mech, profile, agent, reports);
}

ManipulationResult manipulation_search(const FractionalMechanism& mech, const Profile& profile, std::size_t agent,
                                       const std::vector<Row>& reports) {
  return search(mech, profile, agent, reports);
}

void require_valid(const HardFamilyConfig& config) {
  if (config.depth < 1 || config.depth > 20) throw ConfigError("hard family depth must lie in [1, 20]");
  if (!(config.low.sign() > 0 && config.low < config.high)) throw ConfigError("hard family needs 0 < q < p");
}

std::vector<Profile> hard_family(const HardFamilyConfig& config) {
  require_valid(config);
  const std::size_t m = std::size_t{1} << config.depth;
  std::vector<Profile> out;
  for (std::size_t level = 1; level <= config.depth; ++level) {
    const std::size_t active = m >> (level - 1);
    std::vector<std::vector<Rational>> rows(2, std::vector<Rational>(m));
    for (std::size_t o = 0; o < active; ++o) {
      const bool first_half = o < active / 2;
      rows[0][o] = first_half ? config.high : config.low;
      rows[1][o] = first_half ? config.low : config.high;
    }
    out.emplace_back(ItemKind::kChores, Divisibility::kDivisible, std::move(rows));
  }
  return out;
}

bool closed_under_permutations(const std::vector<Row>& bundles) {
  std::set<Row> present(bundles.begin(), bundles.end());
  std::map<Row, std::size_t> classes;
  for (const Row& row : present) {
    Row sorted(row);
    std::sort(sorted.begin(), sorted.end());
    ++classes[sorted];
  }
  for (const auto& [sorted, count] : classes) {
    // Distinct permutations = m! / prod(multiplicity!), capped.
    Rational perms(1);
    std::size_t run = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      run = (k > 0 && sorted[k] == sorted[k - 1]) ? run + 1 : 1;
      perms *= Rational(static_cast<long>(k + 1));
      perms /= Rational(static_cast<long>(run));
      if (perms > Rational(static_cast<long>(present.size()))) return false;
    }
    if (perms != Rational(static_cast<long>(count))) return false;
  }
  return true;
}

EfficiencyReport efficiency_experiment(const HardFamilyConfig& config, const SwapDictatorConfig& mech) {
  require_valid(config);
  if (!mech.symmetric_closure && !closed_under_permutations(mech.bundles)) {
    throw ConstraintError("efficiency experiment needs a choice set closed under permutations");
  }
  const std::vector<Profile> family = hard_family(config);
  const Rational t = config.low / config.high;
  const Rational one(1);
  EfficiencyReport report;
  for (std::size_t level = 1; level <= family.size(); ++level) {
    const Profile& profile = family[level - 1];
    const std::size_t active = profile.items() >> (level - 1);
    const std::vector<Rational> x = dictator_choice(mech, profile, 0);
    EfficiencyLevel row;
    row.level = level;
    row.active_items = active;
    for (std::size_t o = 0; o < active; ++o) (o < active / 2 ? row.a : row.b) += x[o];
    const Rational scale(2, static_cast<long>(active));
    row.a *= scale;
    row.b *= scale;
    const FractionalAllocation alloc = swap_dictatorial(mech, profile);
    row.optimal_welfare = optimal_social_welfare(profile);
    row.welfare = social_welfare(profile, alloc);
    row.ratio = efficiency_ratio(profile, alloc);
    row.max_delta = Rational(2) * t / ((one - t) * (row.a - row.b) + one + t);
    if (level >= 2) {
      const Rational& prev_a = report.levels.back().a;
      row.dictate_holds = row.a / (t + one) + row.b * t / (t + one) <= prev_a;
      report.dictate_holds = report.dictate_holds && *row.dictate_holds;
    }
    if (level == 1 || row.ratio < report.worst_ratio) report.worst_ratio = row.ratio;
    if (level == 1 || row.max_delta < report.max_consistent_delta) report.max_consistent_delta = row.max_delta;
    report.levels.push_back(std::move(row));
  }
  return report;
}

ScanReport fairness_ratio_scan(const IntegralMechanism& mech, ScanNotion notion, const std::vector<Profile>& instances) {
  ScanReport report;
  report.notion = notion;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const Profile& profile = instances[idx];
    const IntegralAllocation alloc = mech(profile);
    ++report.instances;
    if (notion == ScanNotion::kEF1) {
      if (!check_ef1(profile, alloc).holds()) ++report.violating_instances;
      continue;
    }
    const bool goods = profile.kind() == ItemKind::kGoods;
    const FairnessReport mms = check_mms(profile, alloc, Rational(1));
    for (const auto& ratio : mms.ratios) {
      if (!ratio) continue;
      if (!report.worst_ratio || (goods ? *ratio < *report.worst_ratio : *ratio > *report.worst_ratio)) {
        report.worst_ratio = *ratio;
        report.worst_instance = idx;
      }
    }
  }
  return report;
}

std::vector<Profile> grid_profiles(ItemKind kind, std::size_t agents, std::size_t items,
                                   const std::vector<Rational>& values) {
  if (values.empty()) throw DomainError("profile grid needs at least one value");
  require_within_guard(values.size(), agents * items, "profile grid");
  std::vector<Profile> out;
  for_each_row(values, agents * items, [&](const Row& flat) {
    std::vector<std::vector<Rational>> rows(agents);
    for (std::size_t i = 0; i < agents; ++i) rows[i].assign(flat.begin() + i * items, flat.begin() + (i + 1) * items);
    out.emplace_back(kind, Divisibility::kIndivisible, std::move(rows));
  });
  return out;
}

Profile random_grid_profile(ItemKind kind, std::size_t agents, std::size_t items,
                            const std::vector<Rational>& values, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<std::vector<Rational>> rows(agents, std::vector<Rational>(items));
  for (auto& row : rows) {
    for (auto& v : row) v = values[pick(rng)];
  }
  return Profile(kind, Divisibility::kIndivisible, std::move(rows));
}

}  // namespace fairdiv
