#include "fairdiv/schedule.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {

EatingSchedule::EatingSchedule(std::size_t agents, std::size_t items, Rational duration)
    : items_(items), duration_(std::move(duration)), segments_(agents) {
  if (duration_.sign() < 0) throw DomainError("schedule duration must be non-negative");
}

void EatingSchedule::append(std::size_t agent, std::size_t item, const Rational& length) {
  if (agent >= segments_.size()) throw IndexError("agent " + std::to_string(agent) + " out of range");
  if (item >= items_) throw IndexError("item " + std::to_string(item) + " out of range");
  if (length.sign() < 0) throw DomainError("negative eating time");
  if (length.is_zero()) return;
  auto& timeline = segments_[agent];
  if (!timeline.empty() && timeline.back().item == item) {
    timeline.back().end += length;
    return;
  }
  Rational start = timeline.empty() ? Rational(0) : timeline.back().end;
  Rational end = start + length;
  timeline.push_back({item, std::move(start), std::move(end)});
}

Rational EatingSchedule::clock(std::size_t agent) const {
  const auto& timeline = segments_.at(agent);
  return timeline.empty() ? Rational(0) : timeline.back().end;
}

RationalMatrix EatingSchedule::consumption() const {
  RationalMatrix out(agents(), items_);
  for (std::size_t i = 0; i < agents(); ++i) {
    for (const auto& seg : segments_[i]) out.at(i, seg.item) += seg.length();
  }
  return out;
}

std::vector<std::string> EatingSchedule::validate(const Profile& profile) const {
  std::vector<std::string> out;
  if (profile.agents() != agents() || profile.items() != items_) {
    out.push_back("schedule shape does not match the profile");
    return out;
  }
  const std::size_t n = agents();
  const std::size_t m = items_;
  const bool goods = profile.kind() == ItemKind::kGoods;

  std::vector<Rational> times = {Rational(0), duration_};
  for (std::size_t i = 0; i < n; ++i) {
    Rational clock(0);
    const auto& timeline = segments_[i];
    for (std::size_t k = 0; k < timeline.size(); ++k) {
      const auto& seg = timeline[k];
      const std::string where = "agent " + std::to_string(i) + " segment " + std::to_string(k);
      if (seg.item >= m) out.push_back(where + ": item out of range");
      if (seg.start != clock) out.push_back(where + ": starts at " + seg.start.to_string() + ", expected " + clock.to_string());
      if (seg.end <= seg.start) out.push_back(where + ": empty or reversed interval");
      if (k > 0 && seg.item < m && timeline[k - 1].item < m) {
        const Rational& prev = profile.value(i, timeline[k - 1].item);
        const Rational& cur = profile.value(i, seg.item);
        if (goods ? cur > prev : cur < prev) out.push_back(where + ": preference increases over time");
      }
      clock = seg.end;
      times.push_back(seg.start);
      times.push_back(seg.end);
    }
    if (clock != duration_) {
      out.push_back("agent " + std::to_string(i) + ": timeline ends at " + clock.to_string() +
                    ", expected " + duration_.to_string());
    }
  }
  if (!out.empty()) return out;

  const RationalMatrix eaten = consumption();
  for (std::size_t o = 0; o < m; ++o) {
    const Rational total = eaten.col_sum(o);
    if (total != Rational(1)) {
      out.push_back("item " + std::to_string(o) + ": total consumption " + total.to_string());
    }
  }

  // Elementary intervals between consecutive breakpoints.
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<Rational> remaining(m, Rational(1));
  std::vector<std::size_t> cursor(n, 0);
  for (std::size_t t = 0; t + 1 < times.size(); ++t) {
    const Rational& a = times[t];
    const Rational dt = times[t + 1] - a;
    std::vector<Rational> rate(m);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& timeline = segments_[i];
      while (cursor[i] < timeline.size() && timeline[cursor[i]].end <= a) ++cursor[i];
      if (cursor[i] == timeline.size()) continue;
      const std::size_t item = timeline[cursor[i]].item;
      if (remaining[item].sign() <= 0) {
        out.push_back("agent " + std::to_string(i) + " eats exhausted item " + std::to_string(item) +
                      " at time " + a.to_string());
      }
      for (std::size_t o = 0; o < m; ++o) {
        if (remaining[o].sign() > 0 && profile.prefers(i, o, item)) {
          out.push_back("agent " + std::to_string(i) + " eats item " + std::to_string(item) + " at time " +
                        a.to_string() + " while preferred item " + std::to_string(o) + " has remainder " +
                        remaining[o].to_string());
          break;
        }
      }
      rate[item] += Rational(1);
    }
    for (std::size_t o = 0; o < m; ++o) {
      if (rate[o].is_zero()) continue;
      remaining[o] -= rate[o] * dt;
      if (remaining[o].sign() < 0) {
        out.push_back("item " + std::to_string(o) + " over-eaten by time " + times[t + 1].to_string());
      }
    }
  }
  return out;
}

}  // namespace fairdiv
