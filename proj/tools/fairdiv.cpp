// Command-line front end: fairdiv <command> [args]. Exit codes: 0 success,
// 1 a checked property was violated, 2 usage, parse or configuration errors.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fairdiv/bivalued.hpp"
#include "fairdiv/builtins.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/lottery.hpp"
#include "fairdiv/picking_exchange.hpp"
#include "fairdiv/ps.hpp"
#include "fairdiv/strategic.hpp"
#include "fairdiv/swap_dictatorial.hpp"
#include "fairdiv/transforms.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace fairdiv;

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string output;
  std::string format = "json";
  std::string manifest;
};

// ---- output -------------------------------------------------------------

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

void table_lines(const json& value, const std::string& prefix, std::ostringstream& out);

// Arrays of flat objects become aligned column tables.
bool try_columns(const json& list, const std::string& prefix, std::ostringstream& out) {
  if (!list.is_array() || list.empty()) return false;
  std::vector<std::string> keys;
  for (const auto& row : list) {
    if (!row.is_object()) return false;
    for (const auto& [k, v] : row.items()) {
      if (v.is_structured()) return false;
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
  }
  std::vector<std::size_t> width(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    width[c] = keys[c].size();
    for (const auto& row : list) width[c] = std::max(width[c], cell(row.value(keys[c], json())).size());
  }
  if (!prefix.empty()) out << prefix << ":\n";
  auto line = [&](auto get) {
    for (std::size_t c = 0; c < keys.size(); ++c) {
      const std::string text = get(c);
      out << (c ? "  " : "") << text << std::string(width[c] - text.size(), ' ');
    }
    out << "\n";
  };
  line([&](std::size_t c) { return keys[c]; });
  for (const auto& row : list) line([&](std::size_t c) { return cell(row.value(keys[c], json())); });
  return true;
}

void table_lines(const json& value, const std::string& prefix, std::ostringstream& out) {
  if (try_columns(value, prefix, out)) return;
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) table_lines(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (value.is_array() && std::any_of(value.begin(), value.end(), [](const json& v) { return v.is_structured(); })) {
    for (std::size_t k = 0; k < value.size(); ++k) table_lines(value[k], prefix + "[" + std::to_string(k) + "]", out);
    return;
  }
  out << prefix << ": " << (value.is_array() ? value.dump() : cell(value)) << "\n";
}

void emit(const Globals& g, const std::string& json_text) {
  std::string text = json_text;
  if (g.format == "table") {
    std::ostringstream out;
    table_lines(json::parse(json_text), "", out);
    text = out.str();
  }
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw Error("cannot write " + g.output);
  file << text;
}

json as_json(const std::string& text) { return json::parse(text); }

// ---- inputs -------------------------------------------------------------

Profile load_profile(const std::string& path) { return io::read_profile(io::read_file(path)); }

std::vector<Rational> parse_values(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(Rational::parse(token));
  if (out.empty()) throw ParseError("values", "empty value list");
  return out;
}

// Integral or fractional allocation, by the key present.
struct AnyAllocation {
  std::optional<IntegralAllocation> integral;
  std::optional<FractionalAllocation> fractional;
};

AnyAllocation load_allocation(const std::string& path, std::size_t items) {
  const std::string text = io::read_file(path);
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError(path, "not valid JSON");
  if (doc.contains("bundles")) return {io::read_integral(text, items), std::nullopt};
  return {std::nullopt, io::read_fractional(text)};
}

struct MechanismChoice {
  std::string name;
  std::string config;
  std::string kind;  // reading for config-based mechanisms
};

std::optional<ItemKind> parse_kind(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "goods") return ItemKind::kGoods;
  if (text == "chores") return ItemKind::kChores;
  throw ParseError("kind", "expected goods or chores");
}

std::optional<IntegralMechanism> integral_mechanism(const MechanismChoice& choice, ItemKind fallback) {
  if (choice.name == "pe") {
    if (choice.config.empty()) throw ConfigError("mechanism pe needs --config");
    return picking_exchange_mechanism(io::read_pe_config(io::read_file(choice.config)),
                                      parse_kind(choice.kind).value_or(fallback));
  }
  return builtin_integral(choice.name);
}

std::optional<FractionalMechanism> fractional_mechanism(const MechanismChoice& choice, ItemKind fallback) {
  if (choice.name == "swap-dictatorial") {
    if (choice.config.empty()) throw ConfigError("mechanism swap-dictatorial needs --config");
    return swap_dictatorial_mechanism(io::read_swap_dictator(io::read_file(choice.config)),
                                      parse_kind(choice.kind).value_or(fallback), "swap-dictatorial");
  }
  return builtin_fractional(choice.name);
}

void add_mechanism_options(CLI::App* cmd, MechanismChoice& choice, bool required = true) {
  auto* opt = cmd->add_option("--mechanism,-m", choice.name,
                              "pe, swap-dictatorial, or a built-in: equal-split, ps, ps-proportional, bivalued, "
                              "half-bundle, utilitarian, all-to-one");
  if (required) opt->required();
  cmd->add_option("--config", choice.config, "mechanism config file (pe, swap-dictatorial)");
  cmd->add_option("--kind", choice.kind, "reading for config-based mechanisms (goods|chores)");
}

[[noreturn]] void unknown_mechanism(const std::string& name) {
  throw ConfigError("unknown mechanism '" + name + "'");
}

int report_exit(bool holds) { return holds ? kOk : kFinding; }

// ---- commands -----------------------------------------------------------

int cmd_run(const Globals& g, const std::string& instance, const MechanismChoice& choice) {
  const Profile profile = load_profile(instance);
  if (auto mech = integral_mechanism(choice, profile.kind())) {
    emit(g, io::write_integral((*mech)(profile)));
    return kOk;
  }
  if (auto mech = fractional_mechanism(choice, profile.kind())) {
    emit(g, io::write_fractional((*mech)(profile)));
    return kOk;
  }
  unknown_mechanism(choice.name);
}

int cmd_transform(const Globals& g, const std::string& which, const std::string& instance,
                  const MechanismChoice& choice, const std::string& pivot) {
  const Profile profile = load_profile(instance);
  if (which == "dual") {
    const Rational p = pivot.empty() ? profile.max_entry() : Rational::parse(pivot);
    emit(g, io::write_profile(dual_profile(profile, p)));
    return kOk;
  }
  const ItemKind inner = opposite(profile.kind());
  if (which == "swap") {
    auto mech = integral_mechanism(choice, inner);
    if (!mech) unknown_mechanism(choice.name);
    IntegralMechanism goods = *mech;
    if (!goods.info().kind) {
      MechanismInfo info = goods.info();
      info.kind = inner;
      goods = IntegralMechanism(info, [m = *mech](const Profile& p) { return m(p); });
    }
    emit(g, io::write_integral(swap_two_agent(goods)(profile)));
    return kOk;
  }
  auto mech = fractional_mechanism(choice, which == "complement" ? inner : profile.kind());
  if (!mech) unknown_mechanism(choice.name);
  if (which == "complement") {
    FractionalMechanism goods = *mech;
    if (!goods.info().kind) {
      MechanismInfo info = goods.info();
      info.kind = inner;
      goods = FractionalMechanism(info, [m = *mech](const Profile& p) { return m(p); });
    }
    emit(g, io::write_fractional(divisible_chore_transform(goods)(profile)));
    return kOk;
  }
  if (which == "symmetrize") {
    emit(g, io::write_fractional(symmetrize(*mech)(profile)));
    return kOk;
  }
  throw ConfigError("unknown transform '" + which + "' (swap, complement, symmetrize, dual)");
}

int cmd_pe(const Globals& g, const std::string& action, const std::string& config_path, const std::string& instance,
           std::optional<std::size_t> items) {
  const PickingExchangeConfig config = io::read_pe_config(io::read_file(config_path));
  if (action == "validate") {
    const auto violations = validate_config(config, items.value_or(config.items()));
    emit(g, as_json(io::write_report(CheckReport{violations})).dump(2) + "\n");
    return report_exit(violations.empty());
  }
  if (action == "dualize") {
    emit(g, io::write_pe_config(dualize_config(config)));
    return kOk;
  }
  if (action == "run") {
    if (instance.empty()) throw ConfigError("pe run needs an instance");
    emit(g, io::write_integral(run_picking_exchange(config, load_profile(instance))));
    return kOk;
  }
  throw ConfigError("unknown pe action '" + action + "' (run, dualize, validate)");
}

int cmd_ps(const Globals& g, const std::string& instance, const std::string& tiebreak) {
  const Profile profile = load_profile(instance);
  const PsResult result = ps_run(profile, parse_tiebreak(tiebreak));
  emit(g, json{{"allocation", as_json(io::write_fractional(result.allocation))},
               {"schedule", as_json(io::write_schedule(result.schedule))}}
              .dump(2) + "\n");
  return kOk;
}

BiValuedProfile load_bivalued(const std::string& instance, const std::string& high, const std::string& low) {
  Profile profile = load_profile(instance);
  if (high.empty() != low.empty()) throw ConfigError("give both --high and --low, or neither");
  if (!high.empty()) return BiValuedProfile(std::move(profile), Rational::parse(high), Rational::parse(low));
  return BiValuedProfile::detect(std::move(profile));
}

int cmd_bivalued(const Globals& g, const std::string& instance, bool certificate, bool schedule,
                 const std::string& high, const std::string& low) {
  const BiValuedProfile profile = load_bivalued(instance, high, low);
  const BiValuedOutcome outcome = profile.kind() == ItemKind::kChores ? bivalued_chores_mechanism(profile)
                                                                      : bivalued_goods_mechanism(profile);
  json out = {{"allocation", as_json(io::write_fractional(outcome.allocation))}};
  json levels = json::array();
  for (const auto& y : outcome.waterfill.levels) levels.push_back(y.to_string());
  out["levels"] = levels;
  if (schedule) out["schedule"] = as_json(io::write_schedule(outcome.schedule));
  if (certificate) {
    if (!outcome.certificate) throw ConstraintError("certificates are emitted for chores profiles only");
    out["certificate"] = as_json(io::write_certificate(*outcome.certificate));
  }
  emit(g, out.dump(2) + "\n");
  return kOk;
}

int cmd_lottery(const Globals& g, const std::string& action, const std::vector<std::string>& files) {
  if (files.empty()) throw ConfigError("lottery " + action + " needs an instance");
  const Profile profile = load_profile(files[0]);
  if (action == "implement") {
    FractionalAllocation x = FractionalAllocation::uniform(profile.agents(), profile.items());
    std::optional<EatingSchedule> schedule;
    if (files.size() >= 3) {
      x = io::read_fractional(io::read_file(files[1]));
      schedule = io::read_schedule(io::read_file(files[2]), profile.agents(), profile.items());
    } else if (files.size() == 1) {
      PsResult run = ps_run(profile);
      x = run.allocation;
      schedule = std::move(run.schedule);
    } else {
      throw ConfigError("lottery implement takes an instance, optionally followed by allocation and schedule");
    }
    const ImplementedLottery implemented = implement_lottery(profile, x, *schedule);
    emit(g, io::write_lottery(implemented.lottery));
    return kOk;
  }
  if (action == "verify") {
    if (files.size() != 3) throw ConfigError("lottery verify takes an instance, an allocation and a lottery");
    const FractionalAllocation x = io::read_fractional(io::read_file(files[1]));
    const Lottery lottery = io::read_lottery(io::read_file(files[2]), profile.items());
    const LotteryReport report = verify_lottery(profile, x, lottery);
    emit(g, io::write_report(report));
    return report_exit(report.holds());
  }
  if (action == "sample") {
    if (files.size() != 2) throw ConfigError("lottery sample takes an instance and a lottery");
    const Lottery lottery = io::read_lottery(io::read_file(files[1]), profile.items());
    emit(g, io::write_integral(lottery.sample(g.seed).allocation));
    return kOk;
  }
  throw ConfigError("unknown lottery action '" + action + "' (implement, verify, sample)");
}

int cmd_audit(const Globals& g, const std::string& instance, const MechanismChoice& choice,
              const std::string& grid, bool bivalued, const std::string& high, const std::string& low) {
  const Profile profile = load_profile(instance);
  std::vector<Row> reports;
  if (bivalued) {
    const BiValuedProfile bv = load_bivalued(instance, high, low);
    reports = bivalued_reports(bv.high(), bv.low(), profile.items());
  } else {
    reports = grid_reports(parse_values(grid), profile.items());
  }
  json agents = json::array();
  bool truthful = true;
  for (std::size_t i = 0; i < profile.agents(); ++i) {
    ManipulationResult result;
    if (auto mech = integral_mechanism(choice, profile.kind())) {
      result = manipulation_search(*mech, profile, i, reports);
    } else if (choice.name == "bivalued" && bivalued) {
      const BiValuedProfile bv = load_bivalued(instance, high, low);
      result = manipulation_search(bivalued_mechanism(bv.high(), bv.low()), profile, i, reports);
    } else if (auto frac = fractional_mechanism(choice, profile.kind())) {
      result = manipulation_search(*frac, profile, i, reports);
    } else {
      unknown_mechanism(choice.name);
    }
    truthful = truthful && result.truthful();
    json entry = as_json(io::write_report(result));
    entry["agent"] = i;
    agents.push_back(entry);
  }
  emit(g, json{{"truthful", truthful}, {"agents", agents}}.dump(2) + "\n");
  return report_exit(truthful);
}

int cmd_experiment(const Globals& g, std::size_t k, const std::string& p, const std::string& q,
                   const MechanismChoice& choice) {
  HardFamilyConfig config{k, Rational::parse(p), Rational::parse(q)};
  require_valid(config);
  const std::size_t m = std::size_t{1} << k;
  std::optional<SwapDictatorConfig> mech;
  if (choice.name == "swap-dictatorial") {
    if (choice.config.empty()) throw ConfigError("mechanism swap-dictatorial needs --config");
    mech = io::read_swap_dictator(io::read_file(choice.config));
  } else {
    mech = swap_dictator_preset(choice.name, m);
  }
  if (!mech) throw ConfigError("efficiency experiment takes equal-split, half-bundle or swap-dictatorial");
  const EfficiencyReport report = efficiency_experiment(config, *mech);
  emit(g, io::write_report(report));
  return report_exit(report.dictate_holds);
}

int cmd_scan(const Globals& g, const MechanismChoice& choice, const std::string& notion, const std::string& kind,
             std::size_t agents, std::size_t items, const std::string& grid, std::size_t random) {
  const ItemKind item_kind = parse_kind(kind).value_or(ItemKind::kChores);
  auto mech = integral_mechanism(choice, item_kind);
  if (!mech) throw ConfigError("scan fairness needs an integral mechanism (pe, utilitarian, all-to-one)");
  const std::vector<Rational> values = parse_values(grid);
  std::vector<Profile> instances;
  if (random == 0) {
    instances = grid_profiles(item_kind, agents, items, values);
  } else {
    std::mt19937_64 rng(g.seed);
    for (std::size_t k = 0; k < random; ++k) instances.push_back(random_grid_profile(item_kind, agents, items, values, rng));
  }
  ScanNotion scan_notion;
  if (notion == "ef1") {
    scan_notion = ScanNotion::kEF1;
  } else if (notion == "mms") {
    scan_notion = ScanNotion::kMMS;
  } else {
    throw ConfigError("notion must be ef1 or mms");
  }

  // Independent instances are split across --jobs workers; results merge in
  // instance order so output does not depend on the worker count.
  const unsigned jobs = std::max(1U, std::min<unsigned>(g.jobs, static_cast<unsigned>(instances.size())));
  std::vector<ScanReport> parts(jobs);
  std::vector<std::size_t> offsets(jobs + 1);
  for (unsigned w = 0; w <= jobs; ++w) offsets[w] = instances.size() * w / jobs;
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        std::vector<Profile> slice(instances.begin() + offsets[w], instances.begin() + offsets[w + 1]);
        parts[w] = fairness_ratio_scan(*mech, scan_notion, slice);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  ScanReport merged;
  merged.notion = scan_notion;
  const bool goods = item_kind == ItemKind::kGoods;
  for (unsigned w = 0; w < jobs; ++w) {
    merged.instances += parts[w].instances;
    merged.violating_instances += parts[w].violating_instances;
    if (!parts[w].worst_ratio) continue;
    const Rational& r = *parts[w].worst_ratio;
    if (!merged.worst_ratio || (goods ? r < *merged.worst_ratio : r > *merged.worst_ratio)) {
      merged.worst_ratio = r;
      merged.worst_instance = offsets[w] + *parts[w].worst_instance;
    }
  }
  emit(g, io::write_report(merged));
  return report_exit(scan_notion == ScanNotion::kMMS || merged.violating_instances == 0);
}

int cmd_verify(const Globals& g, const std::string& notion, const std::vector<std::string>& files,
               const std::string& alpha, const std::string& certificate) {
  if (files.size() != 2) throw ConfigError("verify takes an instance and an allocation");
  const Profile profile = load_profile(files[0]);
  const AnyAllocation alloc = load_allocation(files[1], profile.items());
  FairnessReport report{Notion::kEF, std::nullopt, {}, {}};
  auto need_integral = [&]() -> const IntegralAllocation& {
    if (!alloc.integral) throw ConfigError("verify " + notion + " needs an integral allocation");
    return *alloc.integral;
  };
  if (notion == "ef1") {
    report = check_ef1(profile, need_integral());
  } else if (notion == "mms") {
    report = check_mms(profile, need_integral(), alpha.empty() ? Rational(1) : Rational::parse(alpha));
  } else if (notion == "ef") {
    report = alloc.integral ? check_ef(profile, *alloc.integral) : check_ef(profile, *alloc.fractional);
  } else if (notion == "prop") {
    report = alloc.integral ? check_prop(profile, *alloc.integral) : check_prop(profile, *alloc.fractional);
  } else if (notion == "po") {
    report = alloc.integral ? check_po_bruteforce(profile, *alloc.integral)
                            : check_po_bruteforce(profile, *alloc.fractional);
  } else if (notion == "equilibrium") {
    if (certificate.empty()) throw ConfigError("verify equilibrium needs --certificate");
    const RationalMatrix shares =
        alloc.integral ? FractionalAllocation::from(*alloc.integral).shares() : alloc.fractional->shares();
    report = verify_equilibrium(profile, shares, io::read_certificate(io::read_file(certificate)));
  } else {
    throw ConfigError("unknown notion '" + notion + "' (ef1, ef, prop, mms, po, equilibrium)");
  }
  emit(g, io::write_report(report));
  return report_exit(report.holds());
}

// ---- manifests ----------------------------------------------------------

void write_manifest(const std::string& path, const std::vector<std::string>& args, const Globals& g) {
  std::vector<std::string> replay;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--manifest") {
      ++k;
      continue;
    }
    if (args[k].rfind("--manifest=", 0) == 0) continue;
    replay.push_back(args[k]);
  }
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json manifest = {{"command", replay.empty() ? "" : replay.front()},
                   {"args", replay},
                   {"seed", g.seed},
                   {"output", g.output},
                   {"timestamp", stamp}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << manifest.dump(2) << "\n";
}

int dispatch(std::vector<std::string> args);

int cmd_replay(const std::string& path) {
  const json manifest = json::parse(io::read_file(path), nullptr, false);
  if (manifest.is_discarded() || !manifest.contains("args") || !manifest["args"].is_array()) {
    throw ParseError(path, "not a run manifest");
  }
  std::vector<std::string> args;
  for (const auto& a : manifest["args"]) args.push_back(a.get<std::string>());
  if (!args.empty() && args.front() == "replay") throw ConfigError("a manifest cannot replay another manifest");
  return dispatch(std::move(args));
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Exact fair division of goods and chores: mechanisms, audits and certificates", "fairdiv"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads across independent instances")->capture_default_str();
  app.add_option("--output,-o", g.output, "write the result here instead of stdout");
  app.add_option("--format", g.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  app.add_option("--manifest", g.manifest, "record this invocation for replay");
  app.fallthrough();

  std::function<int()> action;
  MechanismChoice choice;
  std::string instance, config, which, pivot, tiebreak = "lowest-index", high, low, grid = "0,1,2,3", notion, kind;
  std::vector<std::string> files;
  std::optional<std::size_t> items_opt;
  bool emit_certificate = false, emit_schedule = false, bivalued = false;
  std::size_t k = 1, agents = 2, items = 2, random = 0;
  std::string p = "10", q = "1";

  auto* run = app.add_subcommand("run", "run a mechanism on an instance");
  run->add_option("instance", instance)->required();
  add_mechanism_options(run, choice);
  run->callback([&] { action = [&] { return cmd_run(g, instance, choice); }; });

  auto* transform = app.add_subcommand("transform", "goods/chores transforms");
  transform->add_option("which", which, "swap, complement, symmetrize or dual")->required();
  transform->add_option("instance", instance)->required();
  add_mechanism_options(transform, choice, false);
  transform->add_option("--pivot", pivot, "pivot for dual (default: largest entry)");
  transform->callback([&] { action = [&] { return cmd_transform(g, which, instance, choice, pivot); }; });

  auto* pe = app.add_subcommand("pe", "picking-exchange configs");
  pe->add_option("action", which, "run, dualize or validate")->required();
  pe->add_option("config", config)->required();
  pe->add_option("instance", instance);
  pe->add_option("--items", items_opt, "item count for validate (default: cells)");
  pe->callback([&] { action = [&] { return cmd_pe(g, which, config, instance, items_opt); }; });

  auto* ps = app.add_subcommand("ps", "probabilistic serial");
  ps->add_option("action", which)->required()->check(CLI::IsMember({"run"}));
  ps->add_option("instance", instance)->required();
  ps->add_option("--tiebreak", tiebreak, "lowest-index or proportional-split")->capture_default_str();
  ps->callback([&] { action = [&] { return cmd_ps(g, instance, tiebreak); }; });

  auto* bv = app.add_subcommand("bivalued", "bi-valued mechanism");
  bv->add_option("action", which)->required()->check(CLI::IsMember({"run"}));
  bv->add_option("instance", instance)->required();
  bv->add_flag("--emit-certificate", emit_certificate, "include the equilibrium certificate (chores)");
  bv->add_flag("--emit-schedule", emit_schedule, "include the eating schedule");
  bv->add_option("--high", high, "the larger value, if the instance uses only one");
  bv->add_option("--low", low, "the smaller value, if the instance uses only one");
  bv->callback([&] { action = [&] { return cmd_bivalued(g, instance, emit_certificate, emit_schedule, high, low); }; });

  auto* lottery = app.add_subcommand("lottery", "lottery implementation of PS outcomes");
  lottery->add_option("action", which, "implement, verify or sample")->required();
  lottery->add_option("files", files, "instance [allocation schedule | allocation lottery | lottery]")->required();
  lottery->callback([&] { action = [&] { return cmd_lottery(g, which, files); }; });

  auto* audit = app.add_subcommand("audit", "truthfulness audit");
  audit->add_option("what", which)->required()->check(CLI::IsMember({"truthfulness"}));
  audit->add_option("instance", instance)->required();
  add_mechanism_options(audit, choice);
  audit->add_option("--grid", grid, "comma-separated report values")->capture_default_str();
  audit->add_flag("--bivalued", bivalued, "enumerate all {high,low}^m reports instead of the grid");
  audit->add_option("--high", high);
  audit->add_option("--low", low);
  audit->callback([&] { action = [&] { return cmd_audit(g, instance, choice, grid, bivalued, high, low); }; });

  auto* experiment = app.add_subcommand("experiment", "efficiency experiment on the hard family");
  experiment->add_option("what", which)->required()->check(CLI::IsMember({"efficiency"}));
  experiment->add_option("--k", k, "depth; m = 2^k")->capture_default_str();
  experiment->add_option("--p", p, "high cost")->capture_default_str();
  experiment->add_option("--q", q, "low cost")->capture_default_str();
  add_mechanism_options(experiment, choice);
  experiment->callback([&] { action = [&] { return cmd_experiment(g, k, p, q, choice); }; });

  auto* scan = app.add_subcommand("scan", "worst-case fairness over an instance grid");
  scan->add_option("what", which)->required()->check(CLI::IsMember({"fairness"}));
  add_mechanism_options(scan, choice);
  scan->add_option("--notion", notion, "ef1 or mms")->required();
  scan->add_option("--agents", agents)->capture_default_str();
  scan->add_option("--items", items)->capture_default_str();
  scan->add_option("--grid", grid, "comma-separated values")->capture_default_str();
  scan->add_option("--random", random, "sample this many instances instead of the full grid")->capture_default_str();
  scan->callback([&] {
    kind = choice.kind;
    action = [&] { return cmd_scan(g, choice, notion, kind, agents, items, grid, random); };
  });

  auto* verify = app.add_subcommand("verify", "check a fairness or efficiency property");
  verify->add_option("notion", notion, "ef1, ef, prop, mms, po or equilibrium")->required();
  verify->add_option("files", files, "instance allocation")->required();
  verify->add_option("--alpha", pivot, "MMS approximation factor");
  verify->add_option("--certificate", config, "equilibrium certificate");
  verify->callback([&] { action = [&] { return cmd_verify(g, notion, files, pivot, config); }; });

  auto* replay = app.add_subcommand("replay", "re-run a recorded manifest");
  replay->add_option("manifest", config)->required();
  replay->callback([&] { action = [&] { return cmd_replay(config); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (!g.manifest.empty()) write_manifest(g.manifest, args, g);
  return action();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(std::move(args));
  } catch (const fairdiv::Error& e) {
    std::cerr << "fairdiv: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "fairdiv: malformed JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "fairdiv: " << e.what() << "\n";
    return kUsage;
  }
}
