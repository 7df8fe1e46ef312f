#include "pdptw/pareto.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "json.hpp"

namespace pdptw {

namespace {

bool le(double x, double y, double tol) { return x <= y + tol; }
bool lt(double x, double y, double tol) { return x < y - tol; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b, double tol) {
  const bool no_worse = a.f1 <= b.f1 && le(a.f2, b.f2, tol) && le(a.f3, b.f3, tol);
  if (!no_worse) return false;
  return a.f1 < b.f1 || lt(a.f2, b.f2, tol) || lt(a.f3, b.f3, tol);
}

bool objectives_equal(const ObjectiveVector& a, const ObjectiveVector& b,
                      double tol) {
  return a.f1 == b.f1 && le(a.f2, b.f2, tol) && le(b.f2, a.f2, tol) &&
         le(a.f3, b.f3, tol) && le(b.f3, a.f3, tol);
}

std::vector<std::size_t> non_dominated_filter(
    const std::vector<ObjectiveVector>& points, double tol) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = j != i && dominates(points[j], points[i], tol);
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

bool ParetoArchive::insert(const ObjectiveVector& objectives, Solution solution) {
  for (const Entry& e : entries_)
    if (dominates(e.objectives, objectives) ||
        objectives_equal(e.objectives, objectives))
      return false;
  std::erase_if(entries_, [&](const Entry& e) {
    return dominates(objectives, e.objectives);
  });
  entries_.push_back(Entry{objectives, std::move(solution)});
  return true;
}

std::vector<ParetoArchive::Entry> ParetoArchive::sorted_entries() const {
  std::vector<Entry> out = entries_;
  std::stable_sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return lex_less(a.objectives, b.objectives);
  });
  return out;
}

std::vector<ObjectiveVector> ParetoArchive::objective_set() const {
  std::vector<ObjectiveVector> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.objectives);
  return out;
}

std::string ParetoArchive::to_csv() const {
  std::string out = "f1,f2,f3,routes\n";
  for (const Entry& e : sorted_entries()) {
    out += std::to_string(e.objectives.f1);
    out += ',';
    out += fmt(e.objectives.f2);
    out += ',';
    out += fmt(e.objectives.f3);
    out += ',';
    out += format_solution(e.solution);
    out += '\n';
  }
  return out;
}

std::string ParetoArchive::to_json() const {
  nlohmann::json front = nlohmann::json::array();
  for (const Entry& e : sorted_entries()) {
    nlohmann::json routes = nlohmann::json::array();
    for (const auto& r : e.solution.routes)
      if (!r.empty()) routes.push_back(r);
    front.push_back({{"f1", e.objectives.f1},
                     {"f2", e.objectives.f2},
                     {"f3", e.objectives.f3},
                     {"routes", routes}});
  }
  return front.dump(2);
}

}  // namespace pdptw
