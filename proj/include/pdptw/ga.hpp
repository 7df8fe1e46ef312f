#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "pdptw/evaluation.hpp"
#include "pdptw/instance.hpp"
#include "pdptw/pareto.hpp"

namespace pdptw {

using Rng = std::mt19937_64;

// Permutation of the non-depot node ids.
struct NodeChromosome {
  std::vector<int> order;
  friend bool operator==(const NodeChromosome&, const NodeChromosome&) = default;
};

// Route lengths: fixed width n_prime/2, entries >= 0 summing to n_prime.
// A zero entry contributes no route.
struct SplitChromosome {
  std::vector<int> counts;
  friend bool operator==(const SplitChromosome&, const SplitChromosome&) = default;
};

struct GAConfig {
  int population_size = 50;
  int generations = 200;
  double crossover_rate = 0.6;
  double mutation_rate = 0.3;
  double copy_rate = 0.1;
  std::uint64_t rng_seed = 1;
  // Split chromosomes sampled per node chromosome when forming candidates.
  int pairing_sample = 4;

  // Throws ValidationError on non-positive sizes, negative rates, or rates
  // not summing to 1.
  void validate() const;
};

// Slices the permutation into consecutive blocks of the given lengths.
// Throws std::invalid_argument when the counts do not spend the whole
// permutation or widths disagree.
Solution decode(const NodeChromosome& nodes, const SplitChromosome& split);

void init_populations(const Instance& inst, int population_size, Rng& rng,
                      std::vector<NodeChromosome>& nodes,
                      std::vector<SplitChromosome>& splits);

// Child keeps a's prefix [0, cut), then b's remaining genes in b's order.
// cut must lie in [1, size-1]; std::out_of_range otherwise.
NodeChromosome one_point_crossover(const NodeChromosome& a,
                                   const NodeChromosome& b, int cut);
std::pair<NodeChromosome, NodeChromosome> one_point_crossover(
    const NodeChromosome& a, const NodeChromosome& b, Rng& rng);

// Children swap tails after the cut, then the rightmost positive entry
// absorbs the surplus/deficit so each child still sums to the node count.
std::pair<SplitChromosome, SplitChromosome> split_crossover(
    const SplitChromosome& a, const SplitChromosome& b, int cut);
std::pair<SplitChromosome, SplitChromosome> split_crossover(
    const SplitChromosome& a, const SplitChromosome& b, Rng& rng);

NodeChromosome swap_mutation(const NodeChromosome& c, int i, int j);
NodeChromosome swap_mutation(const NodeChromosome& c, Rng& rng);
SplitChromosome swap_mutation(const SplitChromosome& c, int i, int j);
SplitChromosome swap_mutation(const SplitChromosome& c, Rng& rng);

// Moves each customer right after its supplier: cross-route customers join
// the supplier's route; same-route customers seen too early are relocated.
// Empty routes stay in place. Idempotent.
Solution correct_precedence(const Instance& inst, Solution s);

struct CapacityCorrection {
  Solution solution;
  bool feasible = true;
};

// Relocates whole pickup/delivery pairs off overloaded routes: the first
// route that admits the pair takes it, else a fresh route when the vehicle
// budget allows. feasible=false leaves the offending pair in place.
// Throws ValidationError when a single pair already exceeds capacity.
CapacityCorrection correct_capacity(const Instance& inst, Solution s);

using GenerationObserver = std::function<void(int, const ParetoArchive&)>;

// Runs the full search and returns the archive of non-dominated feasible
// solutions. The observer, when set, sees the archive after the initial
// evaluation (generation 0) and after each subsequent generation.
ParetoArchive evolve(const Instance& inst, const GAConfig& cfg,
                     const GenerationObserver& observer = {});

}  // namespace pdptw
