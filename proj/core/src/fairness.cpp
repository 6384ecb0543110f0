#include "fairdiv/fairness.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fairdiv/errors.hpp"
#include "fairdiv/guard.hpp"

namespace fairdiv {
namespace {

bool is_goods(const Profile& p) { return p.kind() == ItemKind::kGoods; }

std::vector<std::vector<Rational>> bundle_values(const Profile& profile,
                                                 const FractionalAllocation& alloc) {
  const std::size_t n = profile.agents();
  std::vector<std::vector<Rational>> val(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) val[i][j] = bundle_value(profile, i, alloc.bundle(j));
  }
  return val;
}

void require_shape(const Profile& profile, std::size_t agents, std::size_t items) {
  if (profile.agents() != agents || profile.items() != items) {
    throw InvariantError("allocation shape does not match profile");
  }
}

// Branch-and-bound over labelled partitions with symmetric-part pruning.
class MmsSearch {
 public:
  MmsSearch(std::vector<Rational> values, std::size_t parts, bool goods)
      : values_(std::move(values)), loads_(parts), goods_(goods) {
    std::sort(values_.begin(), values_.end(), std::greater<>());
    suffix_.assign(values_.size() + 1, Rational());
    for (std::size_t k = values_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + values_[k];
  }

  Rational run() {
    // Any feasible partition seeds the incumbent.
    if (goods_) {
      best_ = Rational();  // min over bundles is at least 0
    } else {
      best_ = suffix_[0];  // everything in one bundle
    }
    dfs(0, 0);
    return best_;
  }

 private:
  void dfs(std::size_t k, std::size_t used) {
    const std::size_t parts = loads_.size();
    if (k == values_.size()) {
      const Rational worst = goods_ ? *std::min_element(loads_.begin(), loads_.end())
                                    : *std::max_element(loads_.begin(), loads_.end());
      if (goods_ ? worst > best_ : worst < best_) best_ = worst;
      return;
    }
    if (goods_) {
      // More empty parts than items left: the minimum stays 0.
      if (parts - used > values_.size() - k) return;
      const Rational& lowest = *std::min_element(loads_.begin(), loads_.end());
      if (lowest + suffix_[k] <= best_) return;
    }
    const std::size_t limit = std::min(used + 1, parts);
    for (std::size_t p = 0; p < limit; ++p) {
      loads_[p] += values_[k];
      if (goods_ || loads_[p] < best_) dfs(k + 1, std::max(used, p + 1));
      loads_[p] -= values_[k];
    }
  }

  std::vector<Rational> values_;
  std::vector<Rational> suffix_;
  std::vector<Rational> loads_;
  bool goods_;
  Rational best_;
};

}  // namespace

std::string_view to_string(Notion notion) {
  switch (notion) {
    case Notion::kEF: return "EF";
    case Notion::kEF1: return "EF1";
    case Notion::kPROP: return "PROP";
    case Notion::kPO: return "PO";
    case Notion::kMMS: return "MMS";
    case Notion::kMarketEquilibrium: return "market-equilibrium";
  }
  return "?";
}

FairnessReport check_ef1(const Profile& profile, const IntegralAllocation& alloc) {
  if (profile.divisibility() != Divisibility::kIndivisible) {
    throw ConstraintError("EF1 is defined for indivisible profiles only");
  }
  require_shape(profile, alloc.agents(), alloc.items());
  FairnessReport report{Notion::kEF1, std::nullopt, {}, {}};
  const std::size_t n = profile.agents();
  for (std::size_t i = 0; i < n; ++i) {
    const Rational own = bundle_value(profile, i, alloc.bundle(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational other = bundle_value(profile, i, alloc.bundle(j));
      if (is_goods(profile)) {
        // v_i(A_i) >= v_i(A_j - o) for some o in A_j; unrelaxed when A_j empty.
        Rational best_gap = other - own;
        for (std::size_t o : alloc.bundle(j)) {
          const Rational gap = other - profile.value(i, o) - own;
          if (gap < best_gap) best_gap = gap;
        }
        if (best_gap.sign() > 0) {
          report.witnesses.push_back({i, j, std::nullopt, best_gap, std::nullopt,
                                      "agent envies bundle after removing any single good"});
        }
      } else {
        // c_i(A_i - o) <= c_i(A_j) for some o in A_i; vacuous when A_i empty.
        if (alloc.bundle(i).empty()) continue;
        Rational best_gap;
        bool first = true;
        for (std::size_t o : alloc.bundle(i)) {
          const Rational gap = own - profile.value(i, o) - other;
          if (first || gap < best_gap) best_gap = gap;
          first = false;
        }
        if (best_gap.sign() > 0) {
          report.witnesses.push_back({i, j, std::nullopt, best_gap, std::nullopt,
                                      "agent envies bundle after removing any own chore"});
        }
      }
    }
  }
  return report;
}

Rational mms_value(const Profile& profile, std::size_t agent, std::size_t parts) {
  if (parts == 0) throw DomainError("MMS needs at least one part");
  require_within_guard(parts, profile.items(), "mms_value");
  auto row = profile.row(agent);
  MmsSearch search(std::vector<Rational>(row.begin(), row.end()), parts, is_goods(profile));
  return search.run();
}

FairnessReport check_mms(const Profile& profile, const IntegralAllocation& alloc, const Rational& alpha) {
  require_shape(profile, alloc.agents(), alloc.items());
  FairnessReport report{Notion::kMMS, alpha, {}, {}};
  const std::size_t n = profile.agents();
  for (std::size_t i = 0; i < n; ++i) {
    const Rational mms = mms_value(profile, i, n);
    const Rational own = bundle_value(profile, i, alloc.bundle(i));
    if (mms.is_zero()) {
      report.ratios.push_back(own.is_zero() ? std::optional<Rational>(Rational(1)) : std::nullopt);
    } else {
      report.ratios.push_back(own / mms);
    }
    const Rational threshold = alpha * mms;
    if (is_goods(profile) ? own < threshold : own > threshold) {
      report.witnesses.push_back({i, std::nullopt, std::nullopt,
                                  is_goods(profile) ? threshold - own : own - threshold, std::nullopt,
                                  "MMS share " + mms.to_string()});
    }
  }
  return report;
}

FairnessReport check_ef(const Profile& profile, const FractionalAllocation& alloc) {
  require_shape(profile, alloc.agents(), alloc.items());
  FairnessReport report{Notion::kEF, std::nullopt, {}, {}};
  const auto val = bundle_values(profile, alloc);
  for (std::size_t i = 0; i < profile.agents(); ++i) {
    for (std::size_t j = 0; j < profile.agents(); ++j) {
      if (i == j) continue;
      const Rational gap = is_goods(profile) ? val[i][j] - val[i][i] : val[i][i] - val[i][j];
      if (gap.sign() > 0) report.witnesses.push_back({i, j, std::nullopt, gap, std::nullopt, "envy"});
    }
  }
  return report;
}

FairnessReport check_ef(const Profile& profile, const IntegralAllocation& alloc) {
  return check_ef(profile, FractionalAllocation::from(alloc));
}

FairnessReport check_prop(const Profile& profile, const FractionalAllocation& alloc) {
  require_shape(profile, alloc.agents(), alloc.items());
  FairnessReport report{Notion::kPROP, std::nullopt, {}, {}};
  const Rational n(static_cast<long>(profile.agents()));
  for (std::size_t i = 0; i < profile.agents(); ++i) {
    const Rational own = bundle_value(profile, i, alloc.bundle(i));
    const Rational threshold = profile.total(i) / n;
    const Rational gap = is_goods(profile) ? threshold - own : own - threshold;
    if (gap.sign() > 0) {
      report.witnesses.push_back({i, std::nullopt, std::nullopt, gap, std::nullopt,
                                  "proportional share " + threshold.to_string()});
    }
  }
  return report;
}

FairnessReport check_prop(const Profile& profile, const IntegralAllocation& alloc) {
  return check_prop(profile, FractionalAllocation::from(alloc));
}

FairnessReport check_po_bruteforce(const Profile& profile, const FractionalAllocation& alloc) {
  require_shape(profile, alloc.agents(), alloc.items());
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  require_within_guard(n, m, "check_po_bruteforce");
  FairnessReport report{Notion::kPO, std::nullopt, {}, {}};
  std::vector<Rational> current(n);
  for (std::size_t i = 0; i < n; ++i) current[i] = bundle_value(profile, i, alloc.bundle(i));

  std::vector<std::size_t> owner(m, 0);
  std::vector<Rational> value(n);
  while (true) {
    for (auto& v : value) v = Rational();
    for (std::size_t o = 0; o < m; ++o) value[owner[o]] += profile.value(owner[o], o);
    bool weakly = true;
    bool strictly = false;
    std::size_t gainer = 0;
    Rational gain;
    for (std::size_t i = 0; i < n && weakly; ++i) {
      const Rational d = is_goods(profile) ? value[i] - current[i] : current[i] - value[i];
      if (d.sign() < 0) weakly = false;
      if (d.sign() > 0 && !strictly) {
        strictly = true;
        gainer = i;
        gain = d;
      }
    }
    if (weakly && strictly) {
      report.witnesses.push_back({gainer, std::nullopt, std::nullopt, gain,
                                  IntegralAllocation::from_owners(owner, n),
                                  "Pareto-dominating integral allocation"});
      return report;
    }
    std::size_t pos = 0;
    while (pos < m && ++owner[pos] == n) owner[pos++] = 0;
    if (pos == m) break;
  }
  return report;
}

FairnessReport check_po_bruteforce(const Profile& profile, const IntegralAllocation& alloc) {
  return check_po_bruteforce(profile, FractionalAllocation::from(alloc));
}

FairnessReport verify_equilibrium(const Profile& profile, const RationalMatrix& shares,
                                  const EquilibriumCertificate& cert) {
  if (profile.kind() != ItemKind::kChores) {
    throw ConstraintError("market-equilibrium certificates are for chores");
  }
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  if (shares.rows() != n || shares.cols() != m || cert.prices.size() != m ||
      cert.budgets.size() != n || cert.min_ratios.size() != n) {
    throw InvariantError("certificate shape does not match profile");
  }
  for (std::size_t o = 0; o < m; ++o) {
    if (cert.prices[o].sign() <= 0) {
      throw DomainError("price of item " + std::to_string(o) + " is not positive");
    }
  }
  FairnessReport report{Notion::kMarketEquilibrium, std::nullopt, {}, {}};
  for (std::size_t o = 0; o < m; ++o) {
    const Rational col = shares.col_sum(o);
    if (col != Rational(1)) {
      report.witnesses.push_back({0, std::nullopt, o, abs(Rational(1) - col), std::nullopt,
                                  "item not completely allocated"});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational spent;
    for (std::size_t o = 0; o < m; ++o) spent += cert.prices[o] * shares.at(i, o);
    if (spent != cert.budgets[i]) {
      report.witnesses.push_back({i, std::nullopt, std::nullopt, abs(spent - cert.budgets[i]),
                                  std::nullopt, "budget not spent exactly"});
    }
    Rational gamma = profile.value(i, 0) / cert.prices[0];
    for (std::size_t o = 1; o < m; ++o) gamma = min(gamma, profile.value(i, o) / cert.prices[o]);
    if (gamma != cert.min_ratios[i]) {
      report.witnesses.push_back({i, std::nullopt, std::nullopt, abs(gamma - cert.min_ratios[i]),
                                  std::nullopt, "stated minimum bang-per-buck is wrong"});
    }
    for (std::size_t o = 0; o < m; ++o) {
      if (shares.at(i, o).sign() <= 0) continue;
      const Rational ratio = profile.value(i, o) / cert.prices[o];
      if (ratio != gamma) {
        report.witnesses.push_back({i, std::nullopt, o, ratio - gamma, std::nullopt,
                                    "holds an item above minimum bang-per-buck"});
      }
    }
  }
  return report;
}

Rational optimal_social_welfare(const Profile& profile) {
  Rational total;
  for (std::size_t o = 0; o < profile.items(); ++o) {
    Rational best = profile.value(0, o);
    for (std::size_t i = 1; i < profile.agents(); ++i) {
      best = is_goods(profile) ? max(best, profile.value(i, o)) : min(best, profile.value(i, o));
    }
    total += best;
  }
  return total;
}

Rational social_welfare(const Profile& profile, const FractionalAllocation& alloc) {
  require_shape(profile, alloc.agents(), alloc.items());
  Rational total;
  for (std::size_t i = 0; i < profile.agents(); ++i) total += bundle_value(profile, i, alloc.bundle(i));
  return total;
}

Rational social_welfare(const Profile& profile, const IntegralAllocation& alloc) {
  return social_welfare(profile, FractionalAllocation::from(alloc));
}

Rational efficiency_ratio(const Profile& profile, const FractionalAllocation& alloc) {
  const Rational achieved = social_welfare(profile, alloc);
  const Rational optimal = optimal_social_welfare(profile);
  if (is_goods(profile)) return optimal.is_zero() ? Rational(1) : achieved / optimal;
  if (achieved.is_zero()) {
    if (!optimal.is_zero()) throw InvariantError("achieved chores welfare below optimum");
    return Rational(1);
  }
  return optimal / achieved;
}

}  // namespace fairdiv
