#include <pdptw/ga.hpp>

#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "test_util.hpp"

using namespace pdptw;

namespace {

// `pair_count` pairs of equal demand on a line; windows never bind.
Instance uniform_pairs(int pair_count, double demand, double capacity,
                       int max_vehicles) {
  std::vector<Node> nodes;
  Node depot;
  depot.id = 0;
  depot.l = 5000.0;
  nodes.push_back(depot);
  for (int p = 0; p < pair_count; ++p) {
    Node sup;
    sup.id = 2 * p + 1;
    sup.x = p + 1;
    sup.q = demand;
    sup.l = 5000.0;
    sup.s = 1.0;
    sup.succ = 2 * p + 2;
    Node cus;
    cus.id = 2 * p + 2;
    cus.x = -(p + 1);
    cus.q = -demand;
    cus.l = 5000.0;
    cus.s = 1.0;
    cus.pred = sup.id;
    nodes.push_back(sup);
    nodes.push_back(cus);
  }
  return Instance("uniform", Fleet{capacity, 1.0, 1.0, max_vehicles},
                  std::move(nodes));
}

bool is_permutation_of(const std::vector<int>& got, std::vector<int> want) {
  std::vector<int> sorted = got;
  std::sort(sorted.begin(), sorted.end());
  std::sort(want.begin(), want.end());
  return sorted == want;
}

std::vector<int> flatten(const Solution& s) {
  std::vector<int> out;
  for (const auto& r : s.routes) out.insert(out.end(), r.begin(), r.end());
  return out;
}

const std::vector<int> kFixtureIds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

}  // namespace

TEST_CASE("decode slices the permutation by route lengths") {
  NodeChromosome perm{{5, 8, 2, 6, 4, 3, 10, 7, 9, 1}};

  CHECK(decode(perm, SplitChromosome{{6, 4, 0, 0, 0}}) ==
        Solution{{{5, 8, 2, 6, 4, 3}, {10, 7, 9, 1}}});
  CHECK(decode(perm, SplitChromosome{{10, 0, 0, 0, 0}}) ==
        Solution{{{5, 8, 2, 6, 4, 3, 10, 7, 9, 1}}});
  CHECK(decode(perm, SplitChromosome{{2, 2, 2, 2, 2}}) ==
        Solution{{{5, 8}, {2, 6}, {4, 3}, {10, 7}, {9, 1}}});
  // zero entries vanish rather than produce empty routes
  CHECK(decode(perm, SplitChromosome{{0, 5, 0, 5, 0}}) ==
        Solution{{{5, 8, 2, 6, 4}, {3, 10, 7, 9, 1}}});
}

TEST_CASE("decode rejects splits that spend the wrong number of nodes") {
  NodeChromosome perm{{5, 8, 2, 6, 4, 3, 10, 7, 9, 1}};
  CHECK_THROWS_WITH_AS(decode(perm, SplitChromosome{{4, 4, 0, 0, 0}}),
                       "split spends 8 of 10 nodes", std::invalid_argument);
  CHECK_THROWS_WITH_AS(decode(perm, SplitChromosome{{12, -2, 0, 0, 0}}),
                       "negative route length in split", std::invalid_argument);
}

TEST_CASE("initial populations are valid and deterministic per seed") {
  const Instance& inst = testutil::fixture();

  Rng rng_a(99), rng_b(99);
  std::vector<NodeChromosome> nodes_a, nodes_b;
  std::vector<SplitChromosome> splits_a, splits_b;
  init_populations(inst, 20, rng_a, nodes_a, splits_a);
  init_populations(inst, 20, rng_b, nodes_b, splits_b);
  CHECK(nodes_a == nodes_b);
  CHECK(splits_a == splits_b);
  REQUIRE(nodes_a.size() == 20);
  REQUIRE(splits_a.size() == 20);

  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    std::vector<NodeChromosome> nodes;
    std::vector<SplitChromosome> splits;
    init_populations(inst, 4, rng, nodes, splits);
    for (const NodeChromosome& nc : nodes)
      CHECK(is_permutation_of(nc.order, kFixtureIds));
    for (const SplitChromosome& sc : splits) {
      REQUIRE(sc.counts.size() == 5);
      int sum = 0, positive = 0;
      for (int c : sc.counts) {
        CHECK(c >= 0);
        sum += c;
        if (c > 0) ++positive;
      }
      CHECK(sum == 10);
      CHECK(positive >= 1);
      CHECK(positive <= inst.fleet().max_vehicles);
    }
  }
}

TEST_CASE("init_populations rejects an instance without pairs") {
  Node depot;
  depot.id = 0;
  depot.l = 100.0;
  Instance empty("empty", Fleet{40, 1, 1, 0}, {depot});
  Rng rng(1);
  std::vector<NodeChromosome> nodes;
  std::vector<SplitChromosome> splits;
  CHECK_THROWS_WITH_AS(init_populations(empty, 4, rng, nodes, splits),
                       "instance has no pickup/delivery pairs",
                       ValidationError);
}

TEST_CASE("one-point crossover keeps the prefix and fills from the mate") {
  NodeChromosome a{{1, 2, 3, 4}};
  NodeChromosome b{{4, 3, 2, 1}};
  CHECK(one_point_crossover(a, b, 2) == NodeChromosome{{1, 2, 4, 3}});
  CHECK(one_point_crossover(b, a, 2) == NodeChromosome{{4, 3, 1, 2}});
  CHECK(one_point_crossover(a, a, 2) == a);  // identical parents reproduce
  CHECK(one_point_crossover(NodeChromosome{{2, 1, 3}},
                            NodeChromosome{{3, 1, 2}}, 1) ==
        NodeChromosome{{2, 3, 1}});

  CHECK_THROWS_AS(one_point_crossover(a, b, 0), std::out_of_range);
  CHECK_THROWS_AS(one_point_crossover(a, b, 4), std::out_of_range);
  CHECK_THROWS_AS(one_point_crossover(a, NodeChromosome{{1, 2}}, 1),
                  std::invalid_argument);
}

TEST_CASE("one-point crossover children are always permutations") {
  Rng rng(5);
  NodeChromosome a{kFixtureIds};
  NodeChromosome b{kFixtureIds};
  std::shuffle(a.order.begin(), a.order.end(), rng);
  std::shuffle(b.order.begin(), b.order.end(), rng);
  for (int trial = 0; trial < 200; ++trial) {
    auto [c1, c2] = one_point_crossover(a, b, rng);
    CHECK(is_permutation_of(c1.order, kFixtureIds));
    CHECK(is_permutation_of(c2.order, kFixtureIds));
    a = c1;
    b = c2;
  }
}

TEST_CASE("split crossover swaps tails and repairs the sums") {
  SplitChromosome a{{6, 4, 0, 0, 0}};
  SplitChromosome b{{2, 2, 2, 2, 2}};
  auto [c1, c2] = split_crossover(a, b, 1);
  CHECK(c1 == SplitChromosome{{6, 2, 2, 0, 0}});
  CHECK(c2 == SplitChromosome{{2, 8, 0, 0, 0}});

  auto [same1, same2] = split_crossover(a, a, 3);
  CHECK(same1 == a);
  CHECK(same2 == a);

  CHECK_THROWS_AS(split_crossover(a, b, 0), std::out_of_range);
  CHECK_THROWS_AS(split_crossover(a, b, 5), std::out_of_range);
  CHECK_THROWS_AS(split_crossover(a, SplitChromosome{{6, 4}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(split_crossover(a, SplitChromosome{{2, 2, 2, 2, 1}}, 1),
                  std::invalid_argument);
}

TEST_CASE("split crossover never produces negatives and keeps the total") {
  Rng rng(43);
  SplitChromosome a{{6, 4, 0, 0, 0}};
  SplitChromosome b{{2, 2, 2, 2, 2}};
  for (int trial = 0; trial < 500; ++trial) {
    auto [c1, c2] = split_crossover(a, b, rng);
    for (const SplitChromosome& c : {c1, c2}) {
      int sum = 0;
      for (int v : c.counts) {
        CHECK(v >= 0);
        sum += v;
      }
      CHECK(sum == 10);
      CHECK(c.counts.size() == 5);
    }
    a = c1;
    b = c2;
  }
}

TEST_CASE("swap mutation exchanges exactly two genes") {
  CHECK(swap_mutation(NodeChromosome{{5, 8, 2, 6}}, 0, 3) ==
        NodeChromosome{{6, 8, 2, 5}});
  CHECK(swap_mutation(SplitChromosome{{6, 4, 0, 0, 0}}, 1, 2) ==
        SplitChromosome{{6, 0, 4, 0, 0}});

  // involution: swapping the same two positions twice restores the input
  NodeChromosome nc{{5, 8, 2, 6}};
  CHECK(swap_mutation(swap_mutation(nc, 1, 3), 1, 3) == nc);

  CHECK_THROWS_AS(swap_mutation(nc, 2, 2), std::out_of_range);
  CHECK_THROWS_AS(swap_mutation(nc, -1, 2), std::out_of_range);
  CHECK_THROWS_AS(swap_mutation(nc, 0, 4), std::out_of_range);

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    NodeChromosome out = swap_mutation(nc, rng);
    CHECK(is_permutation_of(out.order, nc.order));
    int moved = 0;
    for (std::size_t i = 0; i < nc.order.size(); ++i)
      if (out.order[i] != nc.order[i]) ++moved;
    CHECK(moved == 2);
  }
  CHECK(swap_mutation(NodeChromosome{{7}}, rng) == NodeChromosome{{7}});
}

TEST_CASE("precedence correction moves customers behind their suppliers") {
  Instance pair = testutil::one_pair();
  CHECK(correct_precedence(pair, Solution{{{2, 8}}}) == Solution{{{8, 2}}});
  CHECK(correct_precedence(pair, Solution{{{8}, {2}}}) ==
        Solution{{{8, 2}, {}}});
  CHECK(correct_precedence(pair, Solution{{{8, 2}}}) == Solution{{{8, 2}}});

  // a feasible plan passes through untouched
  Solution row1{{{8, 2}, {7, 3, 10, 6, 9, 5, 1, 4}}};
  CHECK(correct_precedence(testutil::fixture(), row1) == row1);
}

TEST_CASE("precedence correction output always satisfies precedence") {
  const Instance& inst = testutil::fixture();
  Rng rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    NodeChromosome perm{kFixtureIds};
    std::shuffle(perm.order.begin(), perm.order.end(), rng);
    std::uniform_int_distribution<int> cut(1, 9);
    int c = cut(rng);
    Solution raw{{std::vector<int>(perm.order.begin(), perm.order.begin() + c),
                  std::vector<int>(perm.order.begin() + c, perm.order.end())}};
    Solution fixed = correct_precedence(inst, raw);

    CHECK(is_permutation_of(flatten(fixed), kFixtureIds));
    Feasibility f = check_solution(inst, fixed);
    CHECK(!f.has(ViolationKind::PrecedenceBreach));
    CHECK(correct_precedence(inst, fixed) == fixed);  // idempotent
  }
}

TEST_CASE("capacity correction relocates the overloaded pair") {
  // three suppliers stacked to 60 against a 40-unit vehicle
  Instance sub = testutil::three_pair();
  CapacityCorrection out =
      correct_capacity(sub, Solution{{{8, 7, 3, 10, 9, 2}}});
  CHECK(out.feasible);
  CHECK(is_permutation_of(flatten(out.solution), {8, 2, 7, 9, 3, 10}));
  for (const auto& route : out.solution.routes) {
    CHECK(simulate_route(sub, route).capacity_ok());
  }

  // an already-tight plan passes through untouched
  Solution row2{{{8, 2, 7, 3, 10, 6, 9, 5, 1, 4}}};
  CapacityCorrection kept = correct_capacity(testutil::fixture(), row2);
  CHECK(kept.feasible);
  CHECK(kept.solution == row2);
}

TEST_CASE("capacity correction cascades across routes") {
  Instance inst = uniform_pairs(4, 30.0, 40.0, 0);  // max_vehicles = 4
  CapacityCorrection out =
      correct_capacity(inst, Solution{{{1, 3, 5, 6, 4, 2}, {7, 8}}});
  CHECK(out.feasible);
  CHECK(is_permutation_of(flatten(out.solution), {1, 2, 3, 4, 5, 6, 7, 8}));
  for (const auto& route : out.solution.routes) {
    CHECK(simulate_route(inst, route).capacity_ok());
  }
}

TEST_CASE("capacity correction opens a fresh route when it must") {
  Instance inst = uniform_pairs(3, 30.0, 40.0, 0);  // max_vehicles = 3
  CapacityCorrection out =
      correct_capacity(inst, Solution{{{5, 1, 3, 4, 2, 6}}});
  CHECK(out.feasible);
  CHECK(out.solution.routes.size() == 2);
  CHECK(is_permutation_of(flatten(out.solution), {1, 2, 3, 4, 5, 6}));
}

TEST_CASE("capacity correction reports defeat and restores the input") {
  // both vehicles overflow internally, and the budget allows no third
  Instance inst = uniform_pairs(5, 30.0, 40.0, 2);
  Solution stuck{{{1, 3, 5, 6, 4, 2}, {7, 9, 8, 10}}};
  CapacityCorrection out = correct_capacity(inst, stuck);
  CHECK(!out.feasible);
  CHECK(out.solution == stuck);
}

TEST_CASE("capacity correction rejects a pair no vehicle could ever carry") {
  Instance tiny = testutil::sub_instance({8, 2}, 10.0);
  CHECK_THROWS_WITH_AS(correct_capacity(tiny, Solution{{{8, 2}}}),
                       "pair (8, 2) demand exceeds vehicle capacity",
                       ValidationError);
}

TEST_CASE("configuration validation") {
  GAConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  GAConfig tiny = cfg;
  tiny.population_size = 1;
  CHECK_THROWS_AS(tiny.validate(), ValidationError);

  GAConfig rates = cfg;
  rates.crossover_rate = 0.8;  // 0.8 + 0.3 + 0.1 != 1
  CHECK_THROWS_WITH_AS(rates.validate(), "operator rates must sum to 1",
                       ValidationError);

  GAConfig negative = cfg;
  negative.generations = -1;
  CHECK_THROWS_AS(negative.validate(), ValidationError);

  GAConfig sample = cfg;
  sample.pairing_sample = 0;
  CHECK_THROWS_AS(sample.validate(), ValidationError);
}

TEST_CASE("the search converges to the lone optimum of a one-pair instance") {
  Instance pair = testutil::one_pair();
  GAConfig cfg;
  cfg.population_size = 10;
  cfg.generations = 10;
  cfg.rng_seed = 1;
  ParetoArchive front = evolve(pair, cfg);
  REQUIRE(front.size() == 1);
  const auto& e = front.entries()[0];
  CHECK(e.objectives.f1 == 1);
  CHECK(e.objectives.f2 == 0.0);
  CHECK(e.objectives.f3 == doctest::Approx(61.186184893428411).epsilon(1e-9));
  CHECK(e.solution == Solution{{{8, 2}}});
}

TEST_CASE("zero generations still evaluates the initial population") {
  Instance pair = testutil::two_pair();
  GAConfig cfg;
  cfg.population_size = 20;
  cfg.generations = 0;
  cfg.rng_seed = 7;
  int calls = 0;
  ParetoArchive seen;
  ParetoArchive front = evolve(pair, cfg, [&](int g, const ParetoArchive& a) {
    CHECK(g == 0);
    ++calls;
    seen = a;
  });
  CHECK(calls == 1);
  CHECK(front.size() > 0);
  CHECK(testutil::same_objective_set(front.objective_set(),
                                     seen.objective_set()));
}

TEST_CASE("identical seeds reproduce the search bit for bit") {
  Instance sub = testutil::three_pair();
  GAConfig cfg;
  cfg.population_size = 16;
  cfg.generations = 12;
  cfg.rng_seed = 2024;
  ParetoArchive a = evolve(sub, cfg);
  ParetoArchive b = evolve(sub, cfg);
  CHECK(a.to_csv() == b.to_csv());

  cfg.rng_seed = 2025;
  ParetoArchive c = evolve(sub, cfg);
  CHECK(c.size() > 0);  // different seed still solves the instance
}

TEST_CASE("every archived solution is feasible and mutually non-dominated") {
  const Instance& inst = testutil::fixture();
  GAConfig cfg;
  cfg.population_size = 30;
  cfg.generations = 25;
  cfg.rng_seed = 5;
  ParetoArchive front = evolve(inst, cfg);
  REQUIRE(front.size() > 0);
  const auto entries = front.entries();
  for (const auto& e : entries) {
    CHECK(check_solution(inst, e.solution).ok());
    CHECK(e.objectives == objectives(inst, e.solution));
  }
  for (const auto& a : entries)
    for (const auto& b : entries)
      if (&a != &b) CHECK(!dominates(a.objectives, b.objectives));
}

TEST_CASE("the attained front only ever advances between generations") {
  Instance sub = testutil::three_pair();
  GAConfig cfg;
  cfg.population_size = 16;
  cfg.generations = 15;
  cfg.rng_seed = 9;
  std::vector<std::vector<ObjectiveVector>> history;
  evolve(sub, cfg, [&](int, const ParetoArchive& a) {
    history.push_back(a.objective_set());
  });
  REQUIRE(history.size() == 16);
  for (std::size_t g = 1; g < history.size(); ++g) {
    for (const ObjectiveVector& old : history[g - 1]) {
      bool covered = false;
      for (const ObjectiveVector& now : history[g]) {
        if (objectives_equal(now, old) || dominates(now, old)) {
          covered = true;
          break;
        }
      }
      CHECK(covered);
    }
  }
}
