#pragma once

#include <string>
#include <vector>

#include "pdptw/instance.hpp"

namespace pdptw {

// Slack for load/time comparisons so accumulated float error never flips
// a feasibility verdict.
inline constexpr double kFeasibilityTol = 1e-9;

// One route per used vehicle, depot endpoints implicit. Visit-once and
// feasibility are checked by check_solution, not by construction.
struct Solution {
  std::vector<std::vector<int>> routes;

  friend bool operator==(const Solution&, const Solution&) = default;
};

int non_empty_route_count(const Solution& sol);
Solution drop_empty_routes(Solution sol);

// One serviced node of a simulated route.
struct Visit {
  int node = 0;
  double arrival = 0.0;
  double wait = 0.0;
  double departure = 0.0;
  double load_after = 0.0;  // clamped to [0, capacity]
  double tardiness = 0.0;   // max(0, departure - l)
};

// Chronological trace of one route, depot to depot.
struct ScheduleReport {
  std::vector<Visit> visits;
  double return_arrival = 0.0;
  double return_tardiness = 0.0;  // lateness against the depot window
  double distance = 0.0;          // both depot legs included
  double tardiness = 0.0;         // node tardiness plus return tardiness
  double peak_load = 0.0;
  std::vector<int> capacity_violations;  // nodes where the raw load left [0, Q]

  bool capacity_ok() const { return capacity_violations.empty(); }
};

// Simulates a depot-free route from depot departure at time 0. Arrivals
// before a window opening wait; departures after the deadline accrue
// tardiness. Throws ValidationError on an unknown node id.
ScheduleReport simulate_route(const Instance& inst,
                              const std::vector<int>& route);

// (vehicle count, total tardiness, total travel cost), all minimized.
struct ObjectiveVector {
  int f1 = 0;
  double f2 = 0.0;
  double f3 = 0.0;

  friend bool operator==(const ObjectiveVector&,
                         const ObjectiveVector&) = default;
};

bool lex_less(const ObjectiveVector& a, const ObjectiveVector& b);

// f1 = non-empty routes, f2 = summed tardiness, f3 = cost-weighted distance.
// Assumes sol passes the visit-count check; soft violations are still priced.
ObjectiveVector objectives(const Instance& inst, const Solution& sol);

enum class ViolationKind {
  UnknownNode,
  DuplicateVisit,
  MissingVisit,
  CapacityBreach,
  PrecedenceBreach,
  RouteCountBreach,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct Feasibility {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

// Reports every violated constraint with its location: visit counts,
// capacity (raw load trace against Q), same-route supplier-first
// precedence, and the max_vehicles bound. Violations are data, not errors.
Feasibility check_solution(const Instance& inst, const Solution& sol);

// CSV rows (node,arrival,wait,departure,load,tardiness); the final row is
// the depot return.
std::string schedule_csv_rows(const ScheduleReport& report);
inline const char* schedule_csv_header() {
  return "node,arrival,wait,departure,load,tardiness";
}

// Depot-delimited tour text: "0 8 2 0 | 0 7 3 10 6 9 5 1 4 0".
std::string format_solution(const Solution& sol);

// Parses tour text. '|' separates vehicles; within a segment, interior
// depot visits also split routes, so "0 8 2 0 0 7 3 0" reads as two
// routes. Empty tours ("0 0") yield no routes. Throws ParseError.
Solution parse_tour_text(const std::string& text);

}  // namespace pdptw
