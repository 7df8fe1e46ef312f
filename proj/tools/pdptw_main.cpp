#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pdptw/evaluation.hpp"
#include "pdptw/ga.hpp"
#include "pdptw/instance.hpp"
#include "pdptw/oracle.hpp"
#include "pdptw/pareto.hpp"

namespace {

using nlohmann::json;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct FleetOverrides {
  std::optional<double> capacity;
  std::optional<double> cost_per_distance;
  std::optional<double> speed;
};

void add_fleet_flags(CLI::App* cmd, FleetOverrides& fo) {
  cmd->add_option("--capacity", fo.capacity, "Override vehicle capacity");
  cmd->add_option("--cost-per-distance", fo.cost_per_distance,
                  "Override cost per unit distance");
  cmd->add_option("--speed", fo.speed, "Override vehicle speed");
}

pdptw::Instance load_with_overrides(const std::string& path,
                                    const FleetOverrides& fo) {
  pdptw::Instance inst = pdptw::load_instance(path);
  if (!fo.capacity && !fo.cost_per_distance && !fo.speed) return inst;
  pdptw::Fleet fleet = inst.fleet();
  if (fo.capacity) fleet.capacity = *fo.capacity;
  if (fo.cost_per_distance) fleet.cost_per_distance = *fo.cost_per_distance;
  if (fo.speed) fleet.speed = *fo.speed;
  return inst.with_fleet(fleet);
}

struct GAFlags {
  std::uint64_t seed = 1;
  int pop_size = 50;
  int generations = 200;
  double crossover_rate = 0.6;
  double mutation_rate = 0.3;
  int pairing_sample = 4;
};

void add_ga_flags(CLI::App* cmd, GAFlags& gf) {
  cmd->add_option("--seed", gf.seed, "RNG seed")->envname("PDPTW_SEED");
  cmd->add_option("--pop-size", gf.pop_size, "Population size");
  cmd->add_option("--generations", gf.generations, "Number of generations");
  cmd->add_option("--crossover-rate", gf.crossover_rate,
                  "Crossover probability");
  cmd->add_option("--mutation-rate", gf.mutation_rate, "Mutation probability");
  cmd->add_option("--pairing-sample", gf.pairing_sample,
                  "Route splits sampled per permutation");
}

pdptw::GAConfig to_config(const GAFlags& gf) {
  if (gf.crossover_rate + gf.mutation_rate > 1.0 + 1e-9)
    throw pdptw::ValidationError(
        "crossover and mutation rates together exceed 1");
  pdptw::GAConfig cfg;
  cfg.population_size = gf.pop_size;
  cfg.generations = gf.generations;
  cfg.crossover_rate = gf.crossover_rate;
  cfg.mutation_rate = gf.mutation_rate;
  cfg.copy_rate = std::max(0.0, 1.0 - gf.crossover_rate - gf.mutation_rate);
  cfg.rng_seed = gf.seed;
  cfg.pairing_sample = gf.pairing_sample;
  cfg.validate();
  return cfg;
}

json config_json(const pdptw::Instance& inst, const pdptw::GAConfig& cfg) {
  return json{{"seed", cfg.rng_seed},
              {"population_size", cfg.population_size},
              {"generations", cfg.generations},
              {"crossover_rate", cfg.crossover_rate},
              {"mutation_rate", cfg.mutation_rate},
              {"copy_rate", cfg.copy_rate},
              {"pairing_sample", cfg.pairing_sample},
              {"capacity", inst.fleet().capacity},
              {"cost_per_distance", inst.fleet().cost_per_distance},
              {"speed", inst.fleet().speed},
              {"max_vehicles", inst.fleet().max_vehicles}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_solve(const std::string& path, const FleetOverrides& fo,
              const GAFlags& gf, const std::string& output,
              const std::string& format) {
  const pdptw::Instance inst = load_with_overrides(path, fo);
  const pdptw::GAConfig cfg = to_config(gf);

  const auto t0 = std::chrono::steady_clock::now();
  const pdptw::ParetoArchive archive = pdptw::evolve(inst, cfg);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  if (format == "csv") {
    // Keep the CSV payload pure so identical runs stay byte-identical;
    // run metadata travels on stderr or in a sidecar file.
    const std::string payload = archive.to_csv();
    json meta{{"instance", inst.name()},
              {"config", config_json(inst, cfg)},
              {"front_size", archive.size()},
              {"duration_seconds", elapsed}};
    if (output.empty()) {
      std::cout << payload;
      std::cerr << meta.dump(2) << '\n';
    } else {
      write_text(output, payload);
      write_text(output + ".meta.json", meta.dump(2) + "\n");
    }
    return 0;
  }

  if (format == "json") {
    json front = json::array();
    for (const auto& e : archive.sorted_entries()) {
      json routes = json::array();
      for (const auto& r : e.solution.routes)
        if (!r.empty()) routes.push_back(r);
      front.push_back({{"f1", e.objectives.f1},
                       {"f2", e.objectives.f2},
                       {"f3", e.objectives.f3},
                       {"routes", routes},
                       {"tour", pdptw::format_solution(e.solution)}});
    }
    json record{{"instance", inst.name()},
                {"config", config_json(inst, cfg)},
                {"front", front},
                {"front_size", archive.size()},
                {"generations_run", cfg.generations},
                {"duration_seconds", elapsed}};
    const std::string payload = record.dump(2) + "\n";
    if (output.empty())
      std::cout << payload;
    else
      write_text(output, payload);
    return 0;
  }

  std::string table;
  char line[256];
  table += "instance: " + inst.name() + "\n";
  std::snprintf(line, sizeof line,
                "seed: %llu  population: %d  generations: %d  pairing sample: %d\n",
                static_cast<unsigned long long>(cfg.rng_seed),
                cfg.population_size, cfg.generations, cfg.pairing_sample);
  table += line;
  std::snprintf(line, sizeof line,
                "rates: crossover %.2f  mutation %.2f  copy %.2f\n",
                cfg.crossover_rate, cfg.mutation_rate, cfg.copy_rate);
  table += line;
  std::snprintf(line, sizeof line, "front: %zu solutions  elapsed: %.2f s\n\n",
                archive.size(), elapsed);
  table += line;
  table += "  f1              f2              f3  tour by vehicle\n";
  for (const auto& e : archive.sorted_entries()) {
    std::snprintf(line, sizeof line, "%4d  %14.6f  %14.6f  ", e.objectives.f1,
                  e.objectives.f2, e.objectives.f3);
    table += line;
    table += pdptw::format_solution(e.solution);
    table += '\n';
  }
  if (output.empty())
    std::cout << table;
  else
    write_text(output, table);
  return 0;
}

int run_explain(const std::string& path, const FleetOverrides& fo,
                const std::string& tour_text, const std::string& format) {
  const pdptw::Instance inst = load_with_overrides(path, fo);
  const pdptw::Solution sol = pdptw::parse_tour_text(tour_text);

  std::string out;
  char line[256];
  int k = 0;
  for (const auto& route : sol.routes) {
    if (route.empty()) continue;
    ++k;
    const pdptw::ScheduleReport rep = pdptw::simulate_route(inst, route);
    if (format == "csv") {
      out += "# route " + std::to_string(k) + "\n";
      out += pdptw::schedule_csv_header();
      out += '\n';
      out += pdptw::schedule_csv_rows(rep);
      continue;
    }
    out += "route " + std::to_string(k) + ": " +
           pdptw::format_solution(pdptw::Solution{{route}}) + "\n";
    out += "  node      arrival         wait    departure         load"
           "    tardiness\n";
    for (const pdptw::Visit& v : rep.visits) {
      std::snprintf(line, sizeof line,
                    "%6d  %11.6f  %11.6f  %11.6f  %11.6f  %11.6f\n", v.node,
                    v.arrival, v.wait, v.departure, v.load_after, v.tardiness);
      out += line;
    }
    const double final_load =
        rep.visits.empty() ? 0.0 : rep.visits.back().load_after;
    std::snprintf(line, sizeof line,
                  "%6d  %11.6f  %11.6f  %11.6f  %11.6f  %11.6f\n", 0,
                  rep.return_arrival, 0.0, rep.return_arrival, final_load,
                  rep.return_tardiness);
    out += line;
  }

  const pdptw::ObjectiveVector objs = pdptw::objectives(inst, sol);
  out += "objectives: f1=" + std::to_string(objs.f1) +
         " f2=" + fmt6(objs.f2) + " f3=" + fmt6(objs.f3) + "\n";
  const pdptw::Feasibility feas = pdptw::check_solution(inst, sol);
  if (feas.ok()) {
    out += "verdict: feasible\n";
  } else {
    out += "verdict: infeasible\n";
    for (const pdptw::Violation& v : feas.violations)
      out += "  - " + v.detail + "\n";
  }
  std::cout << out;
  return 0;
}

int run_verify(const std::string& path, const FleetOverrides& fo,
               const GAFlags& gf) {
  const pdptw::Instance inst = load_with_overrides(path, fo);
  const pdptw::OracleResult oracle = pdptw::enumerate_front(inst);
  const pdptw::GAConfig cfg = to_config(gf);
  const pdptw::ParetoArchive archive = pdptw::evolve(inst, cfg);

  const auto want = oracle.front.sorted_entries();
  const auto got = archive.sorted_entries();
  auto attained = [](const auto& entries, const pdptw::ObjectiveVector& v) {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) {
      return pdptw::objectives_equal(e.objectives, v);
    });
  };
  std::vector<pdptw::ObjectiveVector> missing, unexpected;
  for (const auto& e : want)
    if (!attained(got, e.objectives)) missing.push_back(e.objectives);
  for (const auto& e : got)
    if (!attained(want, e.objectives)) unexpected.push_back(e.objectives);

  std::cout << "oracle: enumerated " << oracle.enumerated_count
            << " candidates, " << oracle.feasible_count
            << " feasible, front size " << want.size() << "\n";
  std::cout << "search: front size " << got.size() << "\n";
  if (missing.empty() && unexpected.empty()) {
    std::cout << "MATCH: 100% of oracle front attained\n";
    return 0;
  }
  std::cout << "MISMATCH: attained " << (want.size() - missing.size())
            << " of " << want.size() << " oracle front points\n";
  for (const auto& v : missing)
    std::cout << "  missing: " << v.f1 << ' ' << fmt6(v.f2) << ' '
              << fmt6(v.f3) << "\n";
  for (const auto& v : unexpected)
    std::cout << "  not on oracle front: " << v.f1 << ' ' << fmt6(v.f2) << ' '
              << fmt6(v.f3) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Multi-objective genetic solver for paired pickup/delivery routing "
      "with time windows"};
  app.require_subcommand(1);

  std::string solve_path, solve_output, solve_format = "table";
  FleetOverrides solve_fleet;
  GAFlags solve_ga;
  CLI::App* solve =
      app.add_subcommand("solve", "Run the search and print the front");
  solve->add_option("instance", solve_path, "Instance JSON file")->required();
  add_ga_flags(solve, solve_ga);
  add_fleet_flags(solve, solve_fleet);
  solve->add_option("--output", solve_output, "Write the result to this file");
  solve->add_option("--format", solve_format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  std::string explain_path, explain_tour, explain_format = "table";
  FleetOverrides explain_fleet;
  CLI::App* explain = app.add_subcommand(
      "explain", "Simulate a written tour and print its schedule");
  explain->add_option("instance", explain_path, "Instance JSON file")
      ->required();
  explain
      ->add_option("tour", explain_tour,
                   "Depot-delimited tour, e.g. \"0 8 2 0 | 0 7 9 0\"")
      ->required();
  add_fleet_flags(explain, explain_fleet);
  explain->add_option("--format", explain_format, "Output format")
      ->check(CLI::IsMember({"table", "csv"}));

  std::string verify_path;
  FleetOverrides verify_fleet;
  GAFlags verify_ga;
  CLI::App* verify = app.add_subcommand(
      "verify", "Compare the search front with the exhaustive oracle front");
  verify->add_option("instance", verify_path, "Instance JSON file")
      ->required();
  add_ga_flags(verify, verify_ga);
  add_fleet_flags(verify, verify_fleet);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*solve)
      return run_solve(solve_path, solve_fleet, solve_ga, solve_output,
                       solve_format);
    if (*explain)
      return run_explain(explain_path, explain_fleet, explain_tour,
                         explain_format);
    return run_verify(verify_path, verify_fleet, verify_ga);
  } catch (const pdptw::OracleGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const pdptw::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const pdptw::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
