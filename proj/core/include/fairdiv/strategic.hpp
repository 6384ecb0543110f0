#ifndef FAIRDIV_STRATEGIC_HPP_
#define FAIRDIV_STRATEGIC_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/mechanism.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/swap_dictatorial.hpp"

namespace fairdiv {

using Row = std::vector<Rational>;

// All rows in values^m, odometer order (last item fastest). Guarded.
std::vector<Row> grid_reports(const std::vector<Rational>& values, std::size_t items);
// All rows in {high, low}^m. Guarded.
std::vector<Row> bivalued_reports(const Rational& high, const Rational& low, std::size_t items);

struct ManipulationResult {
  // Largest gain over the enumerated misreports; nullopt when every report
  // equals the truthful row. Positive = profitable deviation.
  std::optional<Rational> best_gain;
  std::optional<Row> witness;  // a misreport attaining best_gain
  std::size_t reports_checked = 0;

  bool truthful() const { return !best_gain || best_gain->sign() <= 0; }
  bool strictly_truthful() const { return !best_gain || best_gain->sign() < 0; }
};

// gain = deviating utility - truthful utility (goods) or truthful cost -
// deviating cost (chores), both under the agent's true row. Reports equal to
// the truthful row are skipped. Fractional outcomes are valued in
// expectation, so the audit of a lottery mechanism runs on its marginals.
ManipulationResult manipulation_search(const IntegralMechanism& mech, const Profile& profile, std::size_t agent,
                                       const std::vector<Row>& reports);
ManipulationResult manipulation_search(const FractionalMechanism& mech, const Profile& profile, std::size_t agent,
                                       const std::vector<Row>& reports);

struct HardFamilyConfig {
  std::size_t depth = 1;  // k
  Rational high{2};       // p
  Rational low{1};        // q
};

void require_valid(const HardFamilyConfig& config);

// Level i (1-based) lives on the first m_i = 2^k / 2^(i-1) of m = 2^k items:
// agent 1 pays p on the first half of them and q on the second half, agent 2
// the mirror image, and both pay 0 elsewhere. Divisible chores.
std::vector<Profile> hard_family(const HardFamilyConfig& config);

struct EfficiencyLevel {
  std::size_t level = 0;
  std::size_t active_items = 0;  // m_i
  Rational a;                    // (2/m_i) * x(first half)
  Rational b;                    // (2/m_i) * x(second half)
  Rational optimal_welfare;
  Rational welfare;
  Rational ratio;                // optimal / achieved cost
  Rational max_delta;            // largest delta allowed by the a - b bound
  std::optional<bool> dictate_holds;  // levels >= 2
};

struct EfficiencyReport {
  std::vector<EfficiencyLevel> levels;
  Rational worst_ratio;
  Rational max_consistent_delta;  // min over levels
  bool dictate_holds = true;
};

// Throws ConstraintError unless D is closed under coordinate permutations
// (explicitly or via symmetric_closure).
EfficiencyReport efficiency_experiment(const HardFamilyConfig& config, const SwapDictatorConfig& mech);

// Whether the listed bundles are closed under coordinate permutations.
bool closed_under_permutations(const std::vector<Row>& bundles);

enum class ScanNotion { kEF1, kMMS };

struct ScanReport {
  ScanNotion notion = ScanNotion::kEF1;
  std::size_t instances = 0;
  std::size_t violating_instances = 0;  // EF1 only
  // MMS only: worst per-agent achieved/MMS ratio (max for chores, min for
  // goods); nullopt if every ratio was unbounded.
  std::optional<Rational> worst_ratio;
  std::optional<std::size_t> worst_instance;
};

ScanReport fairness_ratio_scan(const IntegralMechanism& mech, ScanNotion notion, const std::vector<Profile>& instances);

// Every n-agent profile over values^(n*m). Guarded.
std::vector<Profile> grid_profiles(ItemKind kind, std::size_t agents, std::size_t items,
                                   const std::vector<Rational>& values);
Profile random_grid_profile(ItemKind kind, std::size_t agents, std::size_t items,
                            const std::vector<Rational>& values, std::mt19937_64& rng);

}  // namespace fairdiv

#endif  // FAIRDIV_STRATEGIC_HPP_
