#ifndef FAIRDIV_IO_HPP_
#define FAIRDIV_IO_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "fairdiv/allocation.hpp"
#include "fairdiv/bivalued.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/lottery.hpp"
#include "fairdiv/picking_exchange.hpp"
#include "fairdiv/profile.hpp"
#include "fairdiv/schedule.hpp"
#include "fairdiv/strategic.hpp"
#include "fairdiv/swap_dictatorial.hpp"

// JSON text encodings. Rationals are written as strings ("3/4"); readers
// also accept JSON integers. Item and agent indices are 0-based. Readers throw
// ParseError naming the offending field.
namespace fairdiv::io {

// {"kind": "goods"|"chores", "divisibility": "indivisible"|"divisible",
//  "values": [[...], ...], "normalized": false}
Profile read_profile(std::string_view json);
std::string write_profile(const Profile& profile);

// {"bundles": [[0, 2], [1]]}
IntegralAllocation read_integral(std::string_view json, std::size_t items);
std::string write_integral(const IntegralAllocation& alloc);

// {"shares": [["1/2", "1"], ...]}
FractionalAllocation read_fractional(std::string_view json);
std::string write_fractional(const FractionalAllocation& alloc);

// {"outcomes": [{"weight": "1/2", "bundles": [[0], [1]]}, ...]}
Lottery read_lottery(std::string_view json, std::size_t items);
std::string write_lottery(const Lottery& lottery);

// [{"agent": 0, "item": 1, "start": "0", "end": "1/2"}, ...]
EatingSchedule read_schedule(std::string_view json, std::size_t agents, std::size_t items);
std::string write_schedule(const EatingSchedule& schedule);

// {"prices": [...], "budgets": [...], "min_ratios": [...]}
EquilibriumCertificate read_certificate(std::string_view json);
std::string write_certificate(const EquilibriumCertificate& cert);

// {"x1": [...], "x2": [...], "y1": [...], "y2": [...], "offers1": [[...]],
//  "offers2": [[...]], "deals": [{"give": [...], "take": [...]}],
//  "neutral": "never"|"always"|"seeded", "seed": 0}
PickingExchangeConfig read_pe_config(std::string_view json);
std::string write_pe_config(const PickingExchangeConfig& config);

// {"bundles": [[...], ...], "symmetric_closure": false}
SwapDictatorConfig read_swap_dictator(std::string_view json);
std::string write_swap_dictator(const SwapDictatorConfig& config);

std::string write_report(const FairnessReport& report);
std::string write_report(const CheckReport& report);
std::string write_report(const LotteryReport& report);
std::string write_report(const EfficiencyReport& report);
std::string write_report(const ManipulationResult& result);
std::string write_report(const ScanReport& report);

// Whole file as a string; throws Error when it cannot be read.
std::string read_file(const std::string& path);

}  // namespace fairdiv::io

#endif  // FAIRDIV_IO_HPP_
