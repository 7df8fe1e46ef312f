#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pdptw/evaluation.hpp"

namespace pdptw {

// f1 compares as an exact integer; f2/f3 equality within this tolerance.
inline constexpr double kObjectiveTol = 1e-9;

// True iff a is no worse than b in every objective and strictly better in
// at least one. Strict partial order: irreflexive, antisymmetric, transitive.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b,
               double tol = kObjectiveTol);

bool objectives_equal(const ObjectiveVector& a, const ObjectiveVector& b,
                      double tol = kObjectiveTol);

// Indices (ascending) of the points dominated by no other point.
std::vector<std::size_t> non_dominated_filter(
    const std::vector<ObjectiveVector>& points, double tol = kObjectiveTol);

// Mutually non-dominated (ObjectiveVector, Solution) entries. Objective
// duplicates collapse to the first representative encountered. Single
// writer; concurrent readers allowed between writes.
class ParetoArchive {
 public:
  struct Entry {
    ObjectiveVector objectives;
    Solution solution;
  };

  // Accepts the entry unless an existing member dominates or
  // objective-equals it; on acceptance evicts every member it dominates.
  // Returns whether the entry was added.
  bool insert(const ObjectiveVector& objectives, Solution solution);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Entries ordered lexicographically by (f1, f2, f3).
  std::vector<Entry> sorted_entries() const;
  std::vector<ObjectiveVector> objective_set() const;

  // "f1,f2,f3,routes" with Table-style depot-delimited route text.
  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace pdptw
