#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "pdptw/evaluation.hpp"
#include "pdptw/instance.hpp"
#include "pdptw/pareto.hpp"

namespace pdptw {

// Instance too large to exhaust.
struct OracleGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustion cost grows as (2k)!/2^k per vehicle group; four pairs keeps a
// full sweep in the hundreds of thousands of candidates.
inline constexpr int kOracleGuardPairs = 4;

struct OracleResult {
  ParetoArchive front;
  std::uint64_t enumerated_count = 0;
  std::uint64_t feasible_count = 0;
};

using SolutionVisitor = std::function<void(const Solution&, bool feasible)>;

// Ground truth by brute force: every way to split the pickup/delivery pairs
// across vehicles, crossed with every supplier-first service order inside
// each vehicle. Feasibility and objectives come from the same evaluation
// code the search uses; the returned front is exact. The optional visitor
// sees every candidate with its feasibility verdict.
OracleResult enumerate_front(const Instance& inst,
                             int max_pairs = kOracleGuardPairs,
                             const SolutionVisitor& visitor = {});

}  // namespace pdptw
