#include "pdptw/oracle.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace pdptw {

namespace {

// Every ordering of the group's nodes that keeps each supplier ahead of
// its customer: grow the sequence one legal node at a time.
std::vector<std::vector<int>> group_orders(
    const std::vector<std::pair<int, int>>& pairs,
    const std::vector<std::size_t>& group) {
  std::vector<std::vector<int>> out;
  enum : int { kUntouched, kRiding, kDone };
  std::vector<int> progress(group.size(), kUntouched);
  std::vector<int> seq;
  seq.reserve(group.size() * 2);
  auto extend = [&](auto&& self) -> void {
    if (seq.size() == group.size() * 2) {
      out.push_back(seq);
      return;
    }
    for (std::size_t g = 0; g < group.size(); ++g) {
      if (progress[g] == kUntouched) {
        progress[g] = kRiding;
        seq.push_back(pairs[group[g]].first);
        self(self);
        seq.pop_back();
        progress[g] = kUntouched;
      } else if (progress[g] == kRiding) {
        progress[g] = kDone;
        seq.push_back(pairs[group[g]].second);
        self(self);
        seq.pop_back();
        progress[g] = kRiding;
      }
    }
  };
  extend(extend);
  return out;
}

}  // namespace

OracleResult enumerate_front(const Instance& inst, int max_pairs,
                             const SolutionVisitor& visitor) {
  const auto& pairs = inst.pairs();
  const int pair_count = static_cast<int>(pairs.size());
  if (pair_count > max_pairs)
    throw OracleGuardError("instance exceeds oracle guard (" +
                           std::to_string(pair_count) + " pairs > " +
                           std::to_string(max_pairs) + ")");

  OracleResult res;
  auto consider = [&](const Solution& sol) {
    ++res.enumerated_count;
    const bool ok = check_solution(inst, sol).ok();
    if (ok) {
      ++res.feasible_count;
      res.front.insert(objectives(inst, sol), sol);
    }
    if (visitor) visitor(sol, ok);
  };

  if (pair_count == 0) {
    consider(Solution{});
    return res;
  }

  // Partitions with more groups than vehicles would only be rejected by
  // the route-count check; prune them here.
  const std::size_t max_groups = static_cast<std::size_t>(
      std::max(1, std::min(pair_count, inst.fleet().max_vehicles)));

  std::vector<std::vector<std::size_t>> groups;
  auto emit_partition = [&]() {
    std::vector<std::vector<std::vector<int>>> per_group;
    per_group.reserve(groups.size());
    for (const auto& g : groups) per_group.push_back(group_orders(pairs, g));
    Solution sol;
    sol.routes.resize(groups.size());
    auto combine = [&](auto&& self, std::size_t gi) -> void {
      if (gi == per_group.size()) {
        consider(sol);
        return;
      }
      for (const auto& order : per_group[gi]) {
        sol.routes[gi] = order;
        self(self, gi + 1);
      }
    };
    combine(combine, 0);
  };
  // Pair 0 opens group 0, later pairs join an existing group or open the
  // next one: each set partition appears exactly once. Deeper levels grow
  // and shrink `groups`, so index rather than iterate it.
  auto place = [&](auto&& self, std::size_t idx) -> void {
    if (idx == pairs.size()) {
      emit_partition();
      return;
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      groups[gi].push_back(idx);
      self(self, idx + 1);
      groups[gi].pop_back();
    }
    if (groups.size() < max_groups) {
      groups.emplace_back(1, idx);
      self(self, idx + 1);
      groups.pop_back();
    }
  };
  place(place, 0);
  return res;
}

}  // namespace pdptw
