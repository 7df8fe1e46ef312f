#include "pdptw/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace pdptw {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

int non_empty_route_count(const Solution& sol) {
  int k = 0;
  for (const auto& r : sol.routes) {
    if (!r.empty()) ++k;
  }
  return k;
}

Solution drop_empty_routes(Solution sol) {
  std::erase_if(sol.routes, [](const auto& r) { return r.empty(); });
  return sol;
}

ScheduleReport simulate_route(const Instance& inst,
                              const std::vector<int>& route) {
  ScheduleReport rep;
  if (route.empty()) return rep;

  const double q_max = inst.fleet().capacity;
  int prev = 0;
  double clock = 0.0;  // departure time from prev
  double load = 0.0;   // raw, unclamped
  for (int id : route) {
    const Node& n = inst.node(id);
    Visit v;
    v.node = id;
    rep.distance += inst.distance(prev, id);
    v.arrival = clock + inst.travel_time(prev, id);
    v.wait = std::max(0.0, n.e - v.arrival);
    v.departure = std::max(v.arrival, n.e) + n.s;
    v.tardiness = std::max(0.0, v.departure - n.l);
    rep.tardiness += v.tardiness;

    load += n.q;
    if (load < -kFeasibilityTol || load > q_max + kFeasibilityTol) {
      rep.capacity_violations.push_back(id);
    }
    v.load_after = std::clamp(load, 0.0, q_max);
    rep.peak_load = std::max(rep.peak_load, v.load_after);

    rep.visits.push_back(v);
    clock = v.departure;
    prev = id;
  }
  rep.distance += inst.distance(prev, 0);
  rep.return_arrival = clock + inst.travel_time(prev, 0);
  rep.return_tardiness = std::max(0.0, rep.return_arrival - inst.depot().l);
  rep.tardiness += rep.return_tardiness;
  return rep;
}

bool lex_less(const ObjectiveVector& a, const ObjectiveVector& b) {
  return std::tie(a.f1, a.f2, a.f3) < std::tie(b.f1, b.f2, b.f3);
}

ObjectiveVector objectives(const Instance& inst, const Solution& sol) {
  ObjectiveVector v;
  for (const auto& route : sol.routes) {
    if (route.empty()) continue;
    ScheduleReport rep = simulate_route(inst, route);
    ++v.f1;
    v.f2 += rep.tardiness;
    v.f3 += inst.fleet().cost_per_distance * rep.distance;
  }
  return v;
}

bool Feasibility::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

Feasibility check_solution(const Instance& inst, const Solution& sol) {
  Feasibility f;
  auto add = [&f](ViolationKind k, std::string d) {
    f.violations.push_back({k, std::move(d)});
  };

  // Visit counts; unknown ids are excluded from further checks.
  std::map<int, int> seen;
  for (const auto& route : sol.routes) {
    for (int id : route) {
      if (id == 0) {
        add(ViolationKind::UnknownNode, "depot inside a route");
      } else if (!inst.has_node(id)) {
        add(ViolationKind::UnknownNode, "unknown node " + std::to_string(id));
      } else {
        ++seen[id];
      }
    }
  }
  for (const Node& n : inst.nodes()) {
    auto it = seen.find(n.id);
    if (it == seen.end()) {
      add(ViolationKind::MissingVisit,
          "node " + std::to_string(n.id) + " never visited");
    } else if (it->second > 1) {
      add(ViolationKind::DuplicateVisit,
          "node " + std::to_string(n.id) + " visited " +
              std::to_string(it->second) + " times");
    }
  }

  // Capacity: raw load trace per route against Q.
  const double q_max = inst.fleet().capacity;
  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    double load = 0.0;
    for (int id : sol.routes[r]) {
      if (id == 0 || !inst.has_node(id)) continue;
      load += inst.node(id).q;
      if (load < -kFeasibilityTol || load > q_max + kFeasibilityTol) {
        add(ViolationKind::CapacityBreach,
            "route " + std::to_string(r + 1) + " load " + fmt(load) +
                " outside [0, " + fmt(q_max) + "] at node " +
                std::to_string(id));
      }
    }
  }

  // Precedence: a visited customer needs its supplier earlier on the same
  // route. Unvisited nodes are already reported as missing.
  std::map<int, std::pair<int, int>> pos;  // id -> (route, index)
  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    for (std::size_t i = 0; i < sol.routes[r].size(); ++i) {
      int id = sol.routes[r][i];
      if (id != 0 && inst.has_node(id) && seen[id] == 1) {
        pos[id] = {static_cast<int>(r), static_cast<int>(i)};
      }
    }
  }
  for (auto [w, v] : inst.pairs()) {
    auto iw = pos.find(w);
    auto iv = pos.find(v);
    if (iw == pos.end() || iv == pos.end()) continue;
    if (iw->second.first != iv->second.first) {
      add(ViolationKind::PrecedenceBreach,
          "customer " + std::to_string(v) + " and supplier " +
              std::to_string(w) + " ride different vehicles");
    } else if (iv->second.second < iw->second.second) {
      add(ViolationKind::PrecedenceBreach,
          std::to_string(v) + " before its supplier " + std::to_string(w));
    }
  }

  const int used = non_empty_route_count(sol);
  if (used > inst.fleet().max_vehicles) {
    add(ViolationKind::RouteCountBreach,
        std::to_string(used) + " routes exceed max_vehicles " +
            std::to_string(inst.fleet().max_vehicles));
  }
  return f;
}

std::string schedule_csv_rows(const ScheduleReport& report) {
  std::ostringstream out;
  for (const Visit& v : report.visits) {
    out << v.node << ',' << fmt(v.arrival) << ',' << fmt(v.wait) << ','
        << fmt(v.departure) << ',' << fmt(v.load_after) << ','
        << fmt(v.tardiness) << '\n';
  }
  if (!report.visits.empty()) {
    double final_load = report.visits.back().load_after;
    out << 0 << ',' << fmt(report.return_arrival) << ',' << fmt(0.0) << ','
        << fmt(report.return_arrival) << ',' << fmt(final_load) << ','
        << fmt(report.return_tardiness) << '\n';
  }
  return out.str();
}

std::string format_solution(const Solution& sol) {
  std::ostringstream out;
  bool first = true;
  for (const auto& route : sol.routes) {
    if (route.empty()) continue;
    if (!first) out << " | ";
    first = false;
    out << 0;
    for (int id : route) out << ' ' << id;
    out << ' ' << 0;
  }
  if (first) out << "0 0";
  return out.str();
}

Solution parse_tour_text(const std::string& text) {
  Solution sol;
  std::istringstream segments(text);
  std::string segment;
  bool any_segment = false;
  while (std::getline(segments, segment, '|')) {
    std::istringstream in(segment);
    std::vector<int> ids;
    std::string tok;
    while (in >> tok) {
      try {
        std::size_t used = 0;
        int id = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        if (id < 0) throw ParseError("negative node id in tour: " + tok);
        ids.push_back(id);
      } catch (const std::invalid_argument&) {
        throw ParseError("tour token is not a node id: " + tok);
      } catch (const std::out_of_range&) {
        throw ParseError("tour token is not a node id: " + tok);
      }
    }
    if (ids.empty()) continue;
    any_segment = true;
    if (ids.front() != 0 || ids.back() != 0 || ids.size() < 2) {
      throw ParseError("each tour must start and end at the depot (0)");
    }
    std::vector<int> current;
    for (std::size_t i = 1; i < ids.size(); ++i) {
      if (ids[i] == 0) {
        if (!current.empty()) sol.routes.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(ids[i]);
      }
    }
  }
  if (!any_segment) throw ParseError("empty tour text");
  return sol;
}

}  // namespace pdptw
