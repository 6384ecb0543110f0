#include "fairdiv/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "json.hpp"

namespace fairdiv::io {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
}

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw ParseError(name, "missing field");
  return obj.at(name);
}

std::string text_of(const json& value, const std::string& where) {
  if (!value.is_string()) throw ParseError(where, "expected a string");
  return value.get<std::string>();
}

bool flag_of(const json& value, const std::string& where) {
  if (!value.is_boolean()) throw ParseError(where, "expected true or false");
  return value.get<bool>();
}

Rational rational(const json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw ParseError(where, "expected a rational string or an integer");
}

std::size_t index(const json& value, const std::string& where) {
  if (!value.is_number_integer() || value.get<long long>() < 0) throw ParseError(where, "expected a non-negative integer");
  return value.get<std::size_t>();
}

std::vector<Rational> rational_list(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where, "expected an array");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < value.size(); ++k) out.push_back(rational(value[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<std::vector<Rational>> rational_matrix(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where, "expected an array of rows");
  std::vector<std::vector<Rational>> out;
  for (std::size_t k = 0; k < value.size(); ++k) out.push_back(rational_list(value[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<std::size_t> index_list(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < value.size(); ++k) out.push_back(index(value[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<std::vector<std::size_t>> index_lists(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where, "expected an array of arrays");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < value.size(); ++k) out.push_back(index_list(value[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

json to_json(const std::vector<Rational>& row) {
  json out = json::array();
  for (const auto& r : row) out.push_back(r.to_string());
  return out;
}

json to_json(std::span<const Rational> row) {
  json out = json::array();
  for (const auto& r : row) out.push_back(r.to_string());
  return out;
}

json to_json(const RationalMatrix& matrix) {
  json out = json::array();
  for (std::size_t r = 0; r < matrix.rows(); ++r) out.push_back(to_json(matrix.row(r)));
  return out;
}

json bundles_json(const IntegralAllocation& alloc) {
  json out = json::array();
  for (const auto& bundle : alloc.bundles()) out.push_back(bundle);
  return out;
}

// Wraps domain-level validation failures of parsed data as parse errors.
template <class Fn>
auto checked(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(what, e.what());
  }
}

json witness_json(const Witness& w) {
  json out = {{"agent", w.agent}, {"slack", w.slack.to_string()}, {"detail", w.detail}};
  if (w.other) out["other"] = *w.other;
  if (w.item) out["item"] = *w.item;
  if (w.dominating) out["dominating"] = {{"bundles", bundles_json(*w.dominating)}};
  return out;
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

}  // namespace

Profile read_profile(std::string_view text) {
  const json doc = parse(text);
  const std::string kind = text_of(field(doc, "kind"), "kind");
  ItemKind item_kind;
  if (kind == "goods") {
    item_kind = ItemKind::kGoods;
  } else if (kind == "chores") {
    item_kind = ItemKind::kChores;
  } else {
    throw ParseError("kind", "expected goods or chores, got '" + kind + "'");
  }
  Divisibility div = Divisibility::kIndivisible;
  if (doc.contains("divisibility")) {
    const std::string d = text_of(doc.at("divisibility"), "divisibility");
    if (d == "divisible") {
      div = Divisibility::kDivisible;
    } else if (d != "indivisible") {
      throw ParseError("divisibility", "expected divisible or indivisible, got '" + d + "'");
    }
  }
  const bool normalized = doc.contains("normalized") && flag_of(doc.at("normalized"), "normalized");
  auto values = rational_matrix(field(doc, "values"), "values");
  return checked("values", [&] { return Profile(item_kind, div, std::move(values), normalized); });
}

std::string write_profile(const Profile& profile) {
  json values = json::array();
  for (std::size_t i = 0; i < profile.agents(); ++i) values.push_back(to_json(profile.row(i)));
  return dump({{"kind", std::string(to_string(profile.kind()))},
               {"divisibility", std::string(to_string(profile.divisibility()))},
               {"normalized", profile.normalized()},
               {"values", values}});
}

IntegralAllocation read_integral(std::string_view text, std::size_t items) {
  const json doc = parse(text);
  auto bundles = index_lists(field(doc, "bundles"), "bundles");
  return checked("bundles", [&] { return IntegralAllocation(std::move(bundles), items); });
}

std::string write_integral(const IntegralAllocation& alloc) { return dump({{"bundles", bundles_json(alloc)}}); }

FractionalAllocation read_fractional(std::string_view text) {
  const json doc = parse(text);
  auto rows = rational_matrix(field(doc, "shares"), "shares");
  return checked("shares", [&] { return FractionalAllocation(RationalMatrix(rows)); });
}

std::string write_fractional(const FractionalAllocation& alloc) { return dump({{"shares", to_json(alloc.shares())}}); }

Lottery read_lottery(std::string_view text, std::size_t items) {
  const json doc = parse(text);
  const json& list = field(doc, "outcomes");
  if (!list.is_array() || list.empty()) throw ParseError("outcomes", "expected a nonempty array");
  std::vector<LotteryOutcome> outcomes;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "outcomes[" + std::to_string(k) + "]";
    Rational weight = rational(field(list[k], "weight"), where + ".weight");
    auto bundles = index_lists(field(list[k], "bundles"), where + ".bundles");
    IntegralAllocation alloc = checked("outcomes", [&] { return IntegralAllocation(std::move(bundles), items); });
    outcomes.push_back({std::move(weight), std::move(alloc)});
  }
  return checked("outcomes", [&] { return Lottery(std::move(outcomes)); });
}

std::string write_lottery(const Lottery& lottery) {
  json list = json::array();
  for (const auto& outcome : lottery.outcomes()) {
    list.push_back({{"weight", outcome.probability.to_string()}, {"bundles", bundles_json(outcome.allocation)}});
  }
  return dump({{"outcomes", list}});
}

EatingSchedule read_schedule(std::string_view text, std::size_t agents, std::size_t items) {
  const json doc = parse(text);
  if (!doc.is_array()) throw ParseError("schedule", "expected an array of segments");
  struct Raw {
    std::size_t agent, item;
    Rational start, end;
  };
  std::vector<Raw> raw;
  Rational duration(0);
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const std::string where = "schedule[" + std::to_string(k) + "]";
    Raw seg{index(field(doc[k], "agent"), where + ".agent"), index(field(doc[k], "item"), where + ".item"),
            rational(field(doc[k], "start"), where + ".start"), rational(field(doc[k], "end"), where + ".end")};
    if (seg.agent >= agents) throw ParseError(where + ".agent", "agent out of range");
    if (seg.item >= items) throw ParseError(where + ".item", "item out of range");
    if (seg.end < seg.start) throw ParseError(where, "segment ends before it starts");
    duration = max(duration, seg.end);
    raw.push_back(std::move(seg));
  }
  EatingSchedule schedule(agents, items, duration);
  std::vector<Rational> clock(agents);
  for (const auto& seg : raw) {
    if (seg.start != clock[seg.agent]) {
      throw ParseError("schedule", "segments of agent " + std::to_string(seg.agent) + " are not contiguous and ordered");
    }
    schedule.append(seg.agent, seg.item, seg.end - seg.start);
    clock[seg.agent] = seg.end;
  }
  return schedule;
}

std::string write_schedule(const EatingSchedule& schedule) {
  json list = json::array();
  for (std::size_t i = 0; i < schedule.agents(); ++i) {
    for (const auto& seg : schedule.segments(i)) {
      list.push_back({{"agent", i}, {"item", seg.item}, {"start", seg.start.to_string()}, {"end", seg.end.to_string()}});
    }
  }
  return dump(list);
}

EquilibriumCertificate read_certificate(std::string_view text) {
  const json doc = parse(text);
  return {rational_list(field(doc, "prices"), "prices"), rational_list(field(doc, "budgets"), "budgets"),
          rational_list(field(doc, "min_ratios"), "min_ratios")};
}

std::string write_certificate(const EquilibriumCertificate& cert) {
  return dump({{"prices", to_json(cert.prices)}, {"budgets", to_json(cert.budgets)}, {"min_ratios", to_json(cert.min_ratios)}});
}

PickingExchangeConfig read_pe_config(std::string_view text) {
  const json doc = parse(text);
  PickingExchangeConfig config;
  auto optional_list = [&](const char* name) {
    return doc.contains(name) ? index_list(doc.at(name), name) : std::vector<std::size_t>{};
  };
  config.x1 = optional_list("x1");
  config.x2 = optional_list("x2");
  config.y1 = optional_list("y1");
  config.y2 = optional_list("y2");
  config.offers1 = doc.contains("offers1") ? index_lists(doc.at("offers1"), "offers1")
                                           : std::vector<std::vector<std::size_t>>{config.x1};
  config.offers2 = doc.contains("offers2") ? index_lists(doc.at("offers2"), "offers2")
                                           : std::vector<std::vector<std::size_t>>{config.x2};
  if (doc.contains("deals")) {
    const json& deals = doc.at("deals");
    if (!deals.is_array()) throw ParseError("deals", "expected an array");
    for (std::size_t k = 0; k < deals.size(); ++k) {
      const std::string where = "deals[" + std::to_string(k) + "]";
      config.deals.push_back({index_list(field(deals[k], "give"), where + ".give"),
                              index_list(field(deals[k], "take"), where + ".take")});
    }
  }
  if (doc.contains("neutral")) {
    config.neutral = checked("neutral", [&] { return parse_neutral_policy(text_of(doc.at("neutral"), "neutral")); });
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) throw ParseError("seed", "expected a non-negative integer");
    config.seed = doc.at("seed").get<std::uint64_t>();
  }
  return config;
}

std::string write_pe_config(const PickingExchangeConfig& config) {
  json deals = json::array();
  for (const auto& deal : config.deals) deals.push_back({{"give", deal.give}, {"take", deal.take}});
  return dump({{"x1", config.x1},
               {"x2", config.x2},
               {"y1", config.y1},
               {"y2", config.y2},
               {"offers1", config.offers1},
               {"offers2", config.offers2},
               {"deals", deals},
               {"neutral", std::string(to_string(config.neutral))},
               {"seed", config.seed}});
}

SwapDictatorConfig read_swap_dictator(std::string_view text) {
  const json doc = parse(text);
  SwapDictatorConfig config;
  config.bundles = rational_matrix(field(doc, "bundles"), "bundles");
  if (doc.contains("symmetric_closure")) config.symmetric_closure = flag_of(doc.at("symmetric_closure"), "symmetric_closure");
  return config;
}

std::string write_swap_dictator(const SwapDictatorConfig& config) {
  json bundles = json::array();
  for (const auto& b : config.bundles) bundles.push_back(to_json(b));
  return dump({{"bundles", bundles}, {"symmetric_closure", config.symmetric_closure}});
}

std::string write_report(const FairnessReport& report) {
  json witnesses = json::array();
  for (const auto& w : report.witnesses) witnesses.push_back(witness_json(w));
  json out = {{"notion", std::string(to_string(report.notion))}, {"holds", report.holds()}, {"witnesses", witnesses}};
  if (report.alpha) out["alpha"] = report.alpha->to_string();
  if (!report.ratios.empty()) {
    json ratios = json::array();
    for (const auto& r : report.ratios) ratios.push_back(r ? json(r->to_string()) : json(nullptr));
    out["ratios"] = ratios;
  }
  return dump(out);
}

std::string write_report(const CheckReport& report) {
  return dump({{"holds", report.holds()}, {"violations", report.violations}});
}

std::string write_report(const LotteryReport& report) {
  auto tally = [](const LabelingTally& t) {
    return json{{"holds", t.holds}, {"fails", t.fails}, {"failures", t.failures}};
  };
  return dump({{"holds", report.holds()},
               {"marginal_violations", report.marginal_violations},
               {"size_violations", report.size_violations},
               {"labeling_short_range", tally(report.labeling_short_range)},
               {"labeling_full_range", tally(report.labeling_full_range)},
               {"ef1_violations", report.ef1_violations}});
}

std::string write_report(const EfficiencyReport& report) {
  json levels = json::array();
  for (const auto& level : report.levels) {
    json row = {{"level", level.level},
                {"active_items", level.active_items},
                {"a", level.a.to_string()},
                {"b", level.b.to_string()},
                {"optimal_welfare", level.optimal_welfare.to_string()},
                {"welfare", level.welfare.to_string()},
                {"ratio", level.ratio.to_string()},
                {"max_delta", level.max_delta.to_string()}};
    row["dictate_holds"] = level.dictate_holds ? json(*level.dictate_holds) : json(nullptr);
    levels.push_back(row);
  }
  return dump({{"levels", levels},
               {"worst_ratio", report.worst_ratio.to_string()},
               {"max_consistent_delta", report.max_consistent_delta.to_string()},
               {"dictate_holds", report.dictate_holds}});
}

std::string write_report(const ManipulationResult& result) {
  json out = {{"truthful", result.truthful()},
              {"strictly_truthful", result.strictly_truthful()},
              {"reports_checked", result.reports_checked}};
  out["best_gain"] = result.best_gain ? json(result.best_gain->to_string()) : json(nullptr);
  out["witness"] = result.witness ? to_json(*result.witness) : json(nullptr);
  return dump(out);
}

std::string write_report(const ScanReport& report) {
  json out = {{"notion", report.notion == ScanNotion::kEF1 ? "EF1" : "MMS"},
              {"instances", report.instances},
              {"violating_instances", report.violating_instances}};
  out["worst_ratio"] = report.worst_ratio ? json(report.worst_ratio->to_string()) : json(nullptr);
  out["worst_instance"] = report.worst_instance ? json(*report.worst_instance) : json(nullptr);
  return dump(out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace fairdiv::io
