#include "fairdiv/lottery.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::size_t kMaxListedFailures = 5;

// Kuhn-style augmenting search over the boolean support.
class Matcher {
 public:
  explicit Matcher(const std::vector<std::vector<bool>>& support)
      : support_(support), n_(support.size()), row_(n_, kNone), col_(n_, kNone) {}

  bool augment(std::size_t r, std::vector<bool>& seen) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (!support_[r][c] || seen[c]) continue;
      seen[c] = true;
      if (col_[c] == kNone || augment(col_[c], seen)) {
        col_[c] = r;
        row_[r] = c;
        return true;
      }
    }
    return false;
  }

  // Full matching; on failure returns a Hall violator description.
  std::optional<std::string> match_all() {
    for (std::size_t r = 0; r < n_; ++r) {
      if (row_[r] != kNone) continue;
      std::vector<bool> seen(n_, false);
      if (augment(r, seen)) continue;
      std::vector<std::size_t> rows = {r};
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!seen[c]) continue;
        cols.push_back(c);
        if (col_[c] != kNone) rows.push_back(col_[c]);
      }
      std::string msg = "rows {";
      for (std::size_t k = 0; k < rows.size(); ++k) msg += (k ? "," : "") + std::to_string(rows[k]);
      msg += "} reach only columns {";
      for (std::size_t k = 0; k < cols.size(); ++k) msg += (k ? "," : "") + std::to_string(cols[k]);
      return msg + "}";
    }
    return std::nullopt;
  }

  // Turns the current perfect matching into the lexicographically smallest.
  void minimize() {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (!support_[r][c]) continue;
        if (row_[r] == c) break;
        const std::size_t r2 = col_[c];
        if (r2 < r) continue;  // column owned by a fixed row
        const std::size_t c0 = row_[r];
        row_[r] = c;
        col_[c] = r;
        row_[r2] = kNone;
        col_[c0] = kNone;
        std::vector<bool> seen(n_, false);
        for (std::size_t k = 0; k <= r; ++k) seen[row_[k]] = true;
        if (augment(r2, seen)) break;
        row_[r] = c0;
        col_[c0] = r;
        row_[r2] = c;
        col_[c] = r2;
      }
    }
  }

  const std::vector<std::size_t>& rows() const { return row_; }

 private:
  const std::vector<std::vector<bool>>& support_;
  std::size_t n_;
  std::vector<std::size_t> row_;
  std::vector<std::size_t> col_;
};

// Perfect matching of equal-size sides: allowed[p][o].
bool has_perfect_matching(const std::vector<std::vector<bool>>& allowed) {
  Matcher matcher(allowed);
  return !matcher.match_all().has_value();
}

}  // namespace

PaddedInstance pad_schedule(const Profile& chores, const FractionalAllocation& x, const EatingSchedule& schedule) {
  const std::size_t n = chores.agents();
  const std::size_t m = chores.items();
  const std::size_t r = m % n;
  const std::size_t dummies = r == 0 ? 0 : n - r;
  Rational pivot = chores.max_entry();
  if (pivot.is_zero()) pivot = Rational(1);
  const std::size_t total = m + dummies;

  std::vector<std::vector<Rational>> values(n, std::vector<Rational>(total));
  RationalMatrix shares(n, total);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < m; ++o) {
      values[i][o] = pivot - chores.value(i, o);
      shares.at(i, o) = x.share(i, o);
    }
    for (std::size_t d = 0; d < dummies; ++d) {
      values[i][m + d] = Rational(2) * pivot;
      shares.at(i, m + d) = Rational(1, static_cast<long>(n));
    }
  }
  EatingSchedule padded(n, total, Rational(static_cast<long>(total), static_cast<long>(n)));
  const Rational slice(1, static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dummies; ++d) padded.append(i, m + d, slice);
    for (const auto& seg : schedule.segments(i)) padded.append(i, seg.item, seg.length());
  }
  return {Profile(ItemKind::kGoods, Divisibility::kDivisible, std::move(values)),
          FractionalAllocation(std::move(shares)), std::move(padded), m};
}

SlotMatrix slot_matrix(const EatingSchedule& padded) {
  const Rational& duration = padded.duration();
  if (!duration.is_integer()) throw InvariantError("slot matrix needs an integral duration, got " + duration.to_string());
  const std::size_t slots = static_cast<std::size_t>(std::stoul(duration.numerator_string()));
  const std::size_t n = padded.agents();
  if (n * slots != padded.items()) {
    throw InvariantError("slot matrix is not square: " + std::to_string(n * slots) + " rows, " +
                         std::to_string(padded.items()) + " items");
  }
  SlotMatrix out{RationalMatrix(n * slots, padded.items()), n, slots};
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& seg : padded.segments(i)) {
      for (std::size_t s = 0; s < slots; ++s) {
        const Rational lo = max(seg.start, Rational(static_cast<long>(s)));
        const Rational hi = min(seg.end, Rational(static_cast<long>(s + 1)));
        if (hi > lo) out.matrix.at(out.row(i, s), seg.item) += hi - lo;
      }
    }
  }
  return out;
}

std::vector<BirkhoffTerm> birkhoff_decompose(const RationalMatrix& matrix) {
  const std::size_t n = matrix.rows();
  if (matrix.cols() != n) throw DomainError("Birkhoff decomposition needs a square matrix");
  for (std::size_t k = 0; k < n; ++k) {
    if (matrix.row_sum(k) != Rational(1) || matrix.col_sum(k) != Rational(1)) {
      throw DomainError("matrix is not doubly stochastic at row/column " + std::to_string(k));
    }
  }
  RationalMatrix rest = matrix;
  std::vector<std::vector<bool>> support(n, std::vector<bool>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (rest.at(r, c).sign() < 0) throw DomainError("negative entry in Birkhoff input");
      support[r][c] = rest.at(r, c).sign() > 0;
    }
  }
  std::vector<BirkhoffTerm> terms;
  Rational covered(0);
  while (covered < Rational(1)) {
    Matcher matcher(support);
    if (auto hall = matcher.match_all()) throw DomainError("no perfect matching on the positive support: " + *hall);
    matcher.minimize();
    const std::vector<std::size_t>& assignment = matcher.rows();
    Rational weight = rest.at(0, assignment[0]);
    for (std::size_t r = 1; r < n; ++r) weight = min(weight, rest.at(r, assignment[r]));
    for (std::size_t r = 0; r < n; ++r) {
      Rational& cell = rest.at(r, assignment[r]);
      cell -= weight;
      if (cell.is_zero()) support[r][assignment[r]] = false;
    }
    covered += weight;
    terms.push_back({std::move(weight), assignment});
  }
  return terms;
}

ImplementedLottery implement_lottery(const Profile& chores, const FractionalAllocation& x,
                                     const EatingSchedule& schedule) {
  if (chores.kind() != ItemKind::kChores) throw ConstraintError("implement_lottery expects a chores profile");
  const auto problems = schedule.validate(chores);
  if (!problems.empty()) throw ConstraintError("schedule is not a valid chores PS run: " + problems.front());
  if (schedule.consumption() != x.shares()) throw ConstraintError("schedule does not realize the allocation");

  const std::size_t n = chores.agents();
  const std::size_t m = chores.items();
  const PaddedInstance padded = pad_schedule(chores, x, schedule);
  const SlotMatrix slots = slot_matrix(padded.schedule);
  const std::vector<BirkhoffTerm> terms = birkhoff_decompose(slots.matrix);

  std::vector<LotteryOutcome> outcomes;
  std::vector<SlottedOutcome> slotted_outcomes;
  for (const auto& term : terms) {
    std::vector<std::size_t> owner(m, 0);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> slotted(n);
    for (std::size_t row = 0; row < term.assignment.size(); ++row) {
      const std::size_t item = term.assignment[row];
      if (item >= m) continue;
      owner[item] = slots.agent_of(row);
      slotted[slots.agent_of(row)].emplace_back(slots.slot_of(row), item);
    }
    IntegralAllocation alloc = IntegralAllocation::from_owners(std::move(owner), n);
    outcomes.push_back({term.weight, alloc});
    slotted_outcomes.push_back({term.weight, std::move(alloc), std::move(slotted)});
  }
  return {Lottery(std::move(outcomes)), std::move(slotted_outcomes), slots.slots};
}

CheckReport check_slot_structure(const Profile& chores, const ImplementedLottery& implemented) {
  CheckReport report;
  for (std::size_t t = 0; t < implemented.outcomes.size(); ++t) {
    const auto& slotted = implemented.outcomes[t].slotted;
    const std::string where = "outcome " + std::to_string(t) + ": ";
    for (std::size_t i = 0; i < slotted.size(); ++i) {
      for (std::size_t k = 1; k < slotted[i].size(); ++k) {
        if (chores.value(i, slotted[i][k - 1].second) > chores.value(i, slotted[i][k].second)) {
          report.violations.push_back(where + "agent " + std::to_string(i) + " cost decreases at slot " +
                                      std::to_string(slotted[i][k].first));
        }
      }
      for (std::size_t j = 0; j < slotted.size(); ++j) {
        if (j == i) continue;
        for (const auto& [s, o] : slotted[i]) {
          for (const auto& [s2, o2] : slotted[j]) {
            if (s2 == s + 1 && chores.value(i, o) > chores.value(i, o2)) {
              report.violations.push_back(where + "agent " + std::to_string(i) + " slot " + std::to_string(s) +
                                          " item " + std::to_string(o) + " costs more than agent " +
                                          std::to_string(j) + "'s next-slot item " + std::to_string(o2));
            }
          }
        }
      }
    }
  }
  return report;
}

std::optional<std::string> find_labeling_obstruction(const Profile& chores, const IntegralAllocation& alloc,
                                                     bool full_range) {
  const std::size_t n = alloc.agents();
  std::vector<std::vector<Rational>> own(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o : alloc.bundle(i)) own[i].push_back(chores.value(i, o));
    std::sort(own[i].begin(), own[i].end());
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> items = alloc.bundle(j);
    std::stable_sort(items.begin(), items.end(),
                     [&](std::size_t a, std::size_t b) { return chores.value(j, a) < chores.value(j, b); });
    const std::size_t size_j = items.size();
    // allowed(p, o): o may sit at 1-based position p of agent j's labels.
    auto allowed = [&](std::size_t p, std::size_t o) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        const std::size_t size_i = own[i].size();
        if (size_i <= size_j) {
          std::size_t range = full_range ? size_j : std::min(size_i, size_j);
          range = std::min(range == 0 ? 0 : range - 1, size_i);
          // k = p - 1 must lie in [1, range].
          if (p >= 2 && p - 1 <= range && own[i][p - 2] > chores.value(i, o)) return false;
        } else if (p <= size_j && own[i][p - 1] > chores.value(i, o)) {
          return false;
        }
      }
      return true;
    };
    for (std::size_t lo = 0; lo < size_j;) {
      std::size_t hi = lo;
      while (hi < size_j && chores.value(j, items[hi]) == chores.value(j, items[lo])) ++hi;
      const std::size_t width = hi - lo;
      std::vector<std::vector<bool>> graph(width, std::vector<bool>(width));
      for (std::size_t a = 0; a < width; ++a) {
        for (std::size_t b = 0; b < width; ++b) graph[a][b] = allowed(lo + a + 1, items[lo + b]);
      }
      if (!has_perfect_matching(graph)) {
        return "agent " + std::to_string(j) + ": no labels for positions " + std::to_string(lo + 1) + ".." +
               std::to_string(hi) + " of its bundle";
      }
      lo = hi;
    }
  }
  return std::nullopt;
}

LotteryReport verify_lottery(const Profile& chores, const FractionalAllocation& x, const Lottery& lottery) {
  if (chores.kind() != ItemKind::kChores) throw ConstraintError("verify_lottery expects a chores profile");
  LotteryReport report;
  if (lottery.agents() != x.agents() || lottery.items() != x.items()) {
    report.marginal_violations.push_back("lottery shape differs from the allocation");
    return report;
  }
  const FractionalAllocation marginals = lottery_marginals(lottery);
  for (std::size_t i = 0; i < x.agents(); ++i) {
    for (std::size_t o = 0; o < x.items(); ++o) {
      if (marginals.share(i, o) != x.share(i, o)) {
        report.marginal_violations.push_back("cell (" + std::to_string(i) + "," + std::to_string(o) + "): Pr = " +
                                             marginals.share(i, o).to_string() + ", x = " +
                                             x.share(i, o).to_string());
      }
    }
  }
  auto tally = [](LabelingTally& out, std::size_t t, const std::optional<std::string>& obstruction) {
    if (!obstruction) {
      ++out.holds;
      return;
    }
    ++out.fails;
    if (out.failures.size() < kMaxListedFailures) out.failures.push_back("outcome " + std::to_string(t) + ": " + *obstruction);
  };
  const Profile realized = chores.with_divisibility(Divisibility::kIndivisible);
  for (std::size_t t = 0; t < lottery.outcomes().size(); ++t) {
    const IntegralAllocation& alloc = lottery.outcomes()[t].allocation;
    std::size_t lo = alloc.items();
    std::size_t hi = 0;
    for (const auto& bundle : alloc.bundles()) {
      lo = std::min(lo, bundle.size());
      hi = std::max(hi, bundle.size());
    }
    if (hi > lo + 1) {
      report.size_violations.push_back("outcome " + std::to_string(t) + ": bundle sizes range from " +
                                       std::to_string(lo) + " to " + std::to_string(hi));
    }
    tally(report.labeling_short_range, t, find_labeling_obstruction(chores, alloc, false));
    tally(report.labeling_full_range, t, find_labeling_obstruction(chores, alloc, true));
    const FairnessReport ef1 = check_ef1(realized, alloc);
    if (!ef1.holds()) {
      report.ef1_violations.push_back("outcome " + std::to_string(t) + ": agent " +
                                      std::to_string(ef1.witnesses.front().agent) + " " +
                                      ef1.witnesses.front().detail);
    }
  }
  return report;
}

}  // namespace fairdiv
