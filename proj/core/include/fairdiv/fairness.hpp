#ifndef FAIRDIV_FAIRNESS_HPP_
#define FAIRDIV_FAIRNESS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class Notion { kEF, kEF1, kPROP, kPO, kMMS, kMarketEquilibrium };
std::string_view to_string(Notion notion);

// One violation. `slack` is the exact amount by which the inequality fails
// (always positive for a genuine violation).
struct Witness {
  std::size_t agent = 0;
  std::optional<std::size_t> other;  // the envied agent, for pairwise notions
  std::optional<std::size_t> item;
  Rational slack;
  std::optional<IntegralAllocation> dominating;  // PO witness
  std::string detail;
};

struct FairnessReport {
  Notion notion;
  std::optional<Rational> alpha;  // MMS approximation factor
  std::vector<Witness> witnesses;
  // MMS: per-agent achieved/MMS ratio (nullopt = unbounded, goods with MMS 0).
  std::vector<std::optional<Rational>> ratios;

  bool holds() const { return witnesses.empty(); }
};

// Outcome of a structural check that is not a fairness notion.
struct CheckReport {
  std::vector<std::string> violations;

  bool holds() const { return violations.empty(); }
};

// Prices r(o), budgets b_i and minimum bang-per-buck ratios gamma_i.
struct EquilibriumCertificate {
  std::vector<Rational> prices;
  std::vector<Rational> budgets;
  std::vector<Rational> min_ratios;
};

FairnessReport check_ef1(const Profile& profile, const IntegralAllocation& alloc);

// Exact MMS over all partitions of O into `parts` labelled bundles.
Rational mms_value(const Profile& profile, std::size_t agent, std::size_t parts);
FairnessReport check_mms(const Profile& profile, const IntegralAllocation& alloc, const Rational& alpha);

FairnessReport check_ef(const Profile& profile, const FractionalAllocation& alloc);
FairnessReport check_ef(const Profile& profile, const IntegralAllocation& alloc);
// Threshold v_i(O)/n (goods) or c_i(O)/n (chores).
FairnessReport check_prop(const Profile& profile, const FractionalAllocation& alloc);
FairnessReport check_prop(const Profile& profile, const IntegralAllocation& alloc);

// Enumerates all n^m integral allocations for a Pareto improvement.
FairnessReport check_po_bruteforce(const Profile& profile, const IntegralAllocation& alloc);
// Searches the integral allocations only; a witness refutes PO of the
// fractional allocation, an empty report is not a PO certificate.
FairnessReport check_po_bruteforce(const Profile& profile, const FractionalAllocation& alloc);

// Market-equilibrium check for chores. `shares` may be partial so that
// unallocated mass can be reported. Throws DomainError on a zero price.
FairnessReport verify_equilibrium(const Profile& profile, const RationalMatrix& shares,
                                  const EquilibriumCertificate& cert);

// SW^g = sum_o max_i v_i(o), SW^c = sum_o min_i c_i(o).
Rational optimal_social_welfare(const Profile& profile);
Rational social_welfare(const Profile& profile, const FractionalAllocation& alloc);
Rational social_welfare(const Profile& profile, const IntegralAllocation& alloc);
// SW^c/SW(M) for chores, SW(M)/SW^g for goods; 0/0 is 1.
Rational efficiency_ratio(const Profile& profile, const FractionalAllocation& alloc);

}  // namespace fairdiv

#endif  // FAIRDIV_FAIRNESS_HPP_
