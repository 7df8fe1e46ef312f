#include "pdptw/ga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace pdptw {

namespace {

long split_total(const SplitChromosome& c) {
  return std::accumulate(c.counts.begin(), c.counts.end(), 0L);
}

// Trims or grows the rightmost positive entries until the counts spend
// exactly `target` nodes; an all-zero chromosome grows its last slot.
void repair_split(std::vector<int>& counts, long target) {
  auto rightmost_positive = [&counts]() -> std::size_t {
    for (std::size_t i = counts.size(); i-- > 0;)
      if (counts[i] > 0) return i;
    return counts.size() - 1;
  };
  long sum = std::accumulate(counts.begin(), counts.end(), 0L);
  while (sum > target) {
    --counts[rightmost_positive()];
    --sum;
  }
  while (sum < target) {
    ++counts[rightmost_positive()];
    ++sum;
  }
}

}  // namespace

void GAConfig::validate() const {
  if (population_size < 2)
    throw ValidationError("population size must be at least 2");
  if (generations < 0) throw ValidationError("generations must be non-negative");
  if (pairing_sample < 1) throw ValidationError("pairing sample must be positive");
  auto in_unit = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!in_unit(crossover_rate) || !in_unit(mutation_rate) || !in_unit(copy_rate))
    throw ValidationError("operator rates must lie in [0, 1]");
  if (std::abs(crossover_rate + mutation_rate + copy_rate - 1.0) > 1e-9)
    throw ValidationError("operator rates must sum to 1");
}

Solution decode(const NodeChromosome& nodes, const SplitChromosome& split) {
  long total = 0;
  for (int c : split.counts) {
    if (c < 0) throw std::invalid_argument("negative route length in split");
    total += c;
  }
  if (total != static_cast<long>(nodes.order.size()))
    throw std::invalid_argument("split spends " + std::to_string(total) +
                                " of " + std::to_string(nodes.order.size()) +
                                " nodes");
  Solution sol;
  auto it = nodes.order.begin();
  for (int c : split.counts) {
    if (c == 0) continue;
    sol.routes.emplace_back(it, it + c);
    it += c;
  }
  return sol;
}

void init_populations(const Instance& inst, int population_size, Rng& rng,
                      std::vector<NodeChromosome>& nodes,
                      std::vector<SplitChromosome>& splits) {
  if (inst.n_prime() == 0)
    throw ValidationError("instance has no pickup/delivery pairs");
  if (population_size < 1)
    throw ValidationError("population size must be positive");

  const int np = inst.n_prime();
  const int width = np / 2;
  const int max_active = std::max(1, std::min(width, inst.fleet().max_vehicles));

  std::vector<int> base;
  base.reserve(np);
  for (const Node& nd : inst.nodes()) base.push_back(nd.id);

  nodes.clear();
  splits.clear();
  nodes.reserve(population_size);
  splits.reserve(population_size);

  std::uniform_int_distribution<int> pick_active(1, max_active);
  for (int i = 0; i < population_size; ++i) {
    NodeChromosome nc{base};
    std::shuffle(nc.order.begin(), nc.order.end(), rng);
    nodes.push_back(std::move(nc));

    // Cut the range [0, np) at m-1 distinct interior sites: every active
    // vehicle gets at least one node.
    const int m = pick_active(rng);
    std::vector<int> cuts;
    if (m > 1) {
      std::vector<int> sites(np - 1);
      std::iota(sites.begin(), sites.end(), 1);
      std::shuffle(sites.begin(), sites.end(), rng);
      cuts.assign(sites.begin(), sites.begin() + (m - 1));
      std::sort(cuts.begin(), cuts.end());
    }
    cuts.push_back(np);
    SplitChromosome sc;
    sc.counts.assign(width, 0);
    int prev = 0;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      sc.counts[k] = cuts[k] - prev;
      prev = cuts[k];
    }
    splits.push_back(std::move(sc));
  }
}

NodeChromosome one_point_crossover(const NodeChromosome& a,
                                   const NodeChromosome& b, int cut) {
  const int n = static_cast<int>(a.order.size());
  if (static_cast<int>(b.order.size()) != n)
    throw std::invalid_argument("crossover parents differ in length");
  if (cut < 1 || cut >= n)
    throw std::out_of_range("crossover cut out of range");
  NodeChromosome child;
  child.order.assign(a.order.begin(), a.order.begin() + cut);
  std::unordered_set<int> taken(child.order.begin(), child.order.end());
  for (int id : b.order)
    if (!taken.count(id)) child.order.push_back(id);
  return child;
}

std::pair<NodeChromosome, NodeChromosome> one_point_crossover(
    const NodeChromosome& a, const NodeChromosome& b, Rng& rng) {
  const int n = static_cast<int>(a.order.size());
  if (static_cast<int>(b.order.size()) != n)
    throw std::invalid_argument("crossover parents differ in length");
  if (n < 2) return {a, b};
  std::uniform_int_distribution<int> pick(1, n - 1);
  const int cut = pick(rng);
  return {one_point_crossover(a, b, cut), one_point_crossover(b, a, cut)};
}

std::pair<SplitChromosome, SplitChromosome> split_crossover(
    const SplitChromosome& a, const SplitChromosome& b, int cut) {
  const int w = static_cast<int>(a.counts.size());
  if (static_cast<int>(b.counts.size()) != w)
    throw std::invalid_argument("crossover parents differ in width");
  const long target = split_total(a);
  if (split_total(b) != target)
    throw std::invalid_argument("crossover parents disagree on node count");
  if (cut < 1 || cut >= w)
    throw std::out_of_range("crossover cut out of range");

  SplitChromosome c1, c2;
  c1.counts.assign(a.counts.begin(), a.counts.begin() + cut);
  c1.counts.insert(c1.counts.end(), b.counts.begin() + cut, b.counts.end());
  c2.counts.assign(b.counts.begin(), b.counts.begin() + cut);
  c2.counts.insert(c2.counts.end(), a.counts.begin() + cut, a.counts.end());
  repair_split(c1.counts, target);
  repair_split(c2.counts, target);
  return {std::move(c1), std::move(c2)};
}

std::pair<SplitChromosome, SplitChromosome> split_crossover(
    const SplitChromosome& a, const SplitChromosome& b, Rng& rng) {
  const int w = static_cast<int>(a.counts.size());
  if (static_cast<int>(b.counts.size()) != w)
    throw std::invalid_argument("crossover parents differ in width");
  if (w < 2) return {a, b};
  std::uniform_int_distribution<int> pick(1, w - 1);
  return split_crossover(a, b, pick(rng));
}

namespace {

void check_swap_positions(std::size_t size, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= static_cast<int>(size) ||
      j >= static_cast<int>(size))
    throw std::out_of_range("swap positions must be distinct and in range");
}

std::pair<int, int> draw_swap_positions(std::size_t size, Rng& rng) {
  std::uniform_int_distribution<int> first(0, static_cast<int>(size) - 1);
  std::uniform_int_distribution<int> second(0, static_cast<int>(size) - 2);
  const int i = first(rng);
  int j = second(rng);
  if (j >= i) ++j;
  return {i, j};
}

}  // namespace

NodeChromosome swap_mutation(const NodeChromosome& c, int i, int j) {
  check_swap_positions(c.order.size(), i, j);
  NodeChromosome out = c;
  std::swap(out.order[i], out.order[j]);
  return out;
}

NodeChromosome swap_mutation(const NodeChromosome& c, Rng& rng) {
  if (c.order.size() < 2) return c;
  auto [i, j] = draw_swap_positions(c.order.size(), rng);
  return swap_mutation(c, i, j);
}

SplitChromosome swap_mutation(const SplitChromosome& c, int i, int j) {
  check_swap_positions(c.counts.size(), i, j);
  SplitChromosome out = c;
  std::swap(out.counts[i], out.counts[j]);
  return out;
}

SplitChromosome swap_mutation(const SplitChromosome& c, Rng& rng) {
  if (c.counts.size() < 2) return c;
  auto [i, j] = draw_swap_positions(c.counts.size(), rng);
  return swap_mutation(c, i, j);
}

namespace {

// (route, position) of the first occurrence, or (-1, -1).
std::pair<int, int> locate(const Solution& s, int id) {
  for (int r = 0; r < static_cast<int>(s.routes.size()); ++r) {
    const auto& route = s.routes[r];
    for (int p = 0; p < static_cast<int>(route.size()); ++p)
      if (route[p] == id) return {r, p};
  }
  return {-1, -1};
}

}  // namespace

Solution correct_precedence(const Instance& inst, Solution s) {
  for (const auto& [w, v] : inst.pairs()) {
    auto [rw, pw] = locate(s, w);
    auto [rv, pv] = locate(s, v);
    if (rw < 0 || rv < 0) continue;
    if (rw == rv && pv > pw) continue;
    s.routes[rv].erase(s.routes[rv].begin() + pv);
    if (rv == rw && pv < pw) --pw;
    s.routes[rw].insert(s.routes[rw].begin() + pw + 1, v);
  }
  return s;
}

CapacityCorrection correct_capacity(const Instance& inst, Solution s) {
  const double cap = inst.fleet().capacity;
  for (const auto& [w, v] : inst.pairs())
    if (inst.node(w).q > cap + kFeasibilityTol)
      throw ValidationError("pair (" + std::to_string(w) + ", " +
                            std::to_string(v) +
                            ") demand exceeds vehicle capacity");

  auto first_overflow = [&](const std::vector<int>& route) -> int {
    double load = 0.0;
    for (int p = 0; p < static_cast<int>(route.size()); ++p) {
      load += inst.node(route[p]).q;
      if (load > cap + kFeasibilityTol) return p;
    }
    return -1;
  };
  auto admits_pair = [&](const std::vector<int>& route, int w, int v) {
    std::vector<int> trial = route;
    trial.push_back(w);
    trial.push_back(v);
    return first_overflow(trial) < 0;
  };

  for (;;) {
    int src = -1, pos = -1;
    for (int r = 0; r < static_cast<int>(s.routes.size()) && src < 0; ++r) {
      const int p = first_overflow(s.routes[r]);
      if (p >= 0) {
        src = r;
        pos = p;
      }
    }
    if (src < 0) return {std::move(s), true};

    // Load only rises at suppliers, so the overflow sits on one.
    int w = s.routes[src][pos];
    if (inst.node(w).is_customer()) w = inst.node(w).pred;
    const int v = inst.node(w).succ;

    const auto [rw, pw] = locate(s, w);
    const auto [rv, pv] = locate(s, v);
    if (rw < 0 || rv < 0) return {std::move(s), false};
    if (rw == rv) {
      s.routes[rw].erase(s.routes[rw].begin() + std::max(pw, pv));
      s.routes[rw].erase(s.routes[rw].begin() + std::min(pw, pv));
    } else {
      s.routes[rw].erase(s.routes[rw].begin() + pw);
      s.routes[rv].erase(s.routes[rv].begin() + pv);
    }

    bool placed = false;
    for (auto& route : s.routes) {
      if (route.empty() || !admits_pair(route, w, v)) continue;
      route.push_back(w);
      route.push_back(v);
      placed = true;
      break;
    }
    if (!placed && non_empty_route_count(s) < inst.fleet().max_vehicles) {
      auto empty_slot = std::find_if(s.routes.begin(), s.routes.end(),
                                     [](const auto& r) { return r.empty(); });
      if (empty_slot != s.routes.end())
        *empty_slot = {w, v};
      else
        s.routes.push_back({w, v});
      placed = true;
    }
    if (!placed) {
      // No vehicle can take the pair: put it back and report failure.
      if (rw == rv) {
        s.routes[rw].insert(s.routes[rw].begin() + std::min(pw, pv),
                            std::min(pw, pv) == pw ? w : v);
        s.routes[rw].insert(s.routes[rw].begin() + std::max(pw, pv),
                            std::max(pw, pv) == pv ? v : w);
      } else {
        s.routes[rw].insert(s.routes[rw].begin() + pw, w);
        s.routes[rv].insert(s.routes[rv].begin() + pv, v);
      }
      return {std::move(s), false};
    }
  }
}

namespace {

struct Candidate {
  NodeChromosome node;
  SplitChromosome split;
  ObjectiveVector objectives;
  int rank = 0;
};

bool candidate_before(const Candidate& x, const Candidate& y) {
  if (x.rank != y.rank) return x.rank < y.rank;
  return lex_less(x.objectives, y.objectives);
}

// Moves each customer occurring before its supplier to just after it, so
// most decoded routes start precedence-clean.
void order_pairs(const Instance& inst, NodeChromosome& nc) {
  auto& ord = nc.order;
  for (const auto& [w, v] : inst.pairs()) {
    const auto iw = std::find(ord.begin(), ord.end(), w);
    const auto iv = std::find(ord.begin(), ord.end(), v);
    if (iw == ord.end() || iv == ord.end() || iv > iw) continue;
    ord.erase(iv);
    const auto anchor = std::find(ord.begin(), ord.end(), w);
    ord.insert(anchor + 1, v);
  }
}

std::vector<Candidate> evaluate_pool(const Instance& inst,
                                     const std::vector<NodeChromosome>& nodes,
                                     const std::vector<SplitChromosome>& splits,
                                     int pairing_sample, Rng& rng,
                                     ParetoArchive& archive) {
  std::vector<Candidate> pool;
  pool.reserve(nodes.size() * pairing_sample);
  std::uniform_int_distribution<std::size_t> pick(0, splits.size() - 1);
  for (const NodeChromosome& nc : nodes) {
    for (int t = 0; t < pairing_sample; ++t) {
      const SplitChromosome& sc = splits[pick(rng)];
      CapacityCorrection fixed =
          correct_capacity(inst, correct_precedence(inst, decode(nc, sc)));
      if (!fixed.feasible) continue;
      Solution sol = drop_empty_routes(std::move(fixed.solution));
      if (!check_solution(inst, sol).ok()) continue;
      const ObjectiveVector objs = objectives(inst, sol);
      pool.push_back(Candidate{nc, sc, objs, 0});
      archive.insert(objs, std::move(sol));
    }
  }
  return pool;
}

// Non-dominated sorting by domination counts: rank 0 is the pool's
// non-dominated front, rank r+1 what becomes non-dominated once ranks
// <= r are removed.
void assign_ranks(std::vector<Candidate>& pool) {
  const std::size_t k = pool.size();
  std::vector<std::vector<std::size_t>> beats(k);
  std::vector<int> beaten_by(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && dominates(pool[i].objectives, pool[j].objectives)) {
        beats[i].push_back(j);
        ++beaten_by[j];
      }
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < k; ++i)
    if (beaten_by[i] == 0) {
      pool[i].rank = 0;
      front.push_back(i);
    }
  int rank = 0;
  while (!front.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : front)
      for (std::size_t j : beats[i])
        if (--beaten_by[j] == 0) {
          pool[j].rank = rank + 1;
          next.push_back(j);
        }
    front = std::move(next);
    ++rank;
  }
}

void promote(std::vector<Candidate>&& pool, std::vector<Candidate>& parents,
             int n) {
  if (pool.empty()) return;  // nothing survived: keep the previous parents
  assign_ranks(pool);
  std::stable_sort(pool.begin(), pool.end(), candidate_before);
  if (static_cast<int>(pool.size()) > n) pool.resize(n);
  parents = std::move(pool);
}

const Candidate& tournament(const std::vector<Candidate>& parents, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
  const Candidate& x = parents[pick(rng)];
  const Candidate& y = parents[pick(rng)];
  return candidate_before(y, x) ? y : x;  // tie keeps the first drawn
}

}  // namespace

ParetoArchive evolve(const Instance& inst, const GAConfig& cfg,
                     const GenerationObserver& observer) {
  cfg.validate();
  Rng rng(cfg.rng_seed);

  std::vector<NodeChromosome> nodes;
  std::vector<SplitChromosome> splits;
  init_populations(inst, cfg.population_size, rng, nodes, splits);
  for (NodeChromosome& nc : nodes) order_pairs(inst, nc);

  std::vector<Candidate> parents;
  parents.reserve(nodes.size());
  const ObjectiveVector unscored{std::numeric_limits<int>::max(),
                                 std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < nodes.size(); ++i)
    parents.push_back(Candidate{nodes[i], splits[i], unscored,
                                std::numeric_limits<int>::max()});

  ParetoArchive archive;
  promote(evaluate_pool(inst, nodes, splits, cfg.pairing_sample, rng, archive),
          parents, cfg.population_size);
  if (observer) observer(0, archive);

  const int target = 2 * cfg.population_size;
  std::uniform_real_distribution<double> roll(0.0, 1.0);
  for (int g = 1; g <= cfg.generations; ++g) {
    std::vector<NodeChromosome> inodes;
    std::vector<SplitChromosome> isplits;
    inodes.reserve(target);
    isplits.reserve(target);
    while (static_cast<int>(inodes.size()) < target) {
      const double r = roll(rng);
      if (r < cfg.crossover_rate) {
        const Candidate& pa = tournament(parents, rng);
        const Candidate& pb = tournament(parents, rng);
        auto [n1, n2] = one_point_crossover(pa.node, pb.node, rng);
        auto [s1, s2] = split_crossover(pa.split, pb.split, rng);
        inodes.push_back(std::move(n1));
        isplits.push_back(std::move(s1));
        if (static_cast<int>(inodes.size()) < target) {
          inodes.push_back(std::move(n2));
          isplits.push_back(std::move(s2));
        }
      } else if (r < cfg.crossover_rate + cfg.mutation_rate) {
        const Candidate& p = tournament(parents, rng);
        inodes.push_back(swap_mutation(p.node, rng));
        isplits.push_back(swap_mutation(p.split, rng));
      } else {
        const Candidate& p = tournament(parents, rng);
        inodes.push_back(p.node);
        isplits.push_back(p.split);
      }
    }
    for (NodeChromosome& nc : inodes) order_pairs(inst, nc);
    promote(
        evaluate_pool(inst, inodes, isplits, cfg.pairing_sample, rng, archive),
        parents, cfg.population_size);
    if (observer) observer(g, archive);
  }
  return archive;
}

}  // namespace pdptw
