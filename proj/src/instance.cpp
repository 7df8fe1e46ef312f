#include "pdptw/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace pdptw {

namespace {

std::pair<int, int> normalize_arc(int i, int j) {
  return {std::min(i, j), std::max(i, j)};
}

std::string node_msg(int id, const std::string& what) {
  return "node " + std::to_string(id) + ": " + what;
}

}  // namespace

Instance::Instance(std::string name, Fleet fleet, std::vector<Node> all_nodes,
                   std::vector<std::pair<int, int>> missing_arcs)
    : name_(std::move(name)), fleet_(fleet) {
  bool depot_seen = false;
  for (const Node& n : all_nodes) {
    if (index_.count(n.id) || (depot_seen && n.id == 0)) {
      throw ValidationError(node_msg(n.id, "duplicate id"));
    }
    if (n.id == 0) {
      depot_seen = true;
      depot_ = n;
      index_.emplace(0, -1);
    } else {
      index_.emplace(n.id, static_cast<int>(nodes_.size()));
      nodes_.push_back(n);
    }
  }
  if (!depot_seen) throw ValidationError("missing depot (no node with id 0)");
  if (depot_.q != 0.0) throw ValidationError("depot demand must be 0");
  if (depot_.succ != 0 || depot_.pred != 0) {
    throw ValidationError("depot may not be paired");
  }

  for (const Node& n : all_nodes) {
    if (n.e > n.l) throw ValidationError(node_msg(n.id, "window has e > l"));
    if (n.s < 0.0) throw ValidationError(node_msg(n.id, "negative service time"));
  }

  for (const Node& n : nodes_) {
    if (n.q == 0.0) {
      throw ValidationError(node_msg(n.id, "zero demand on a non-depot node"));
    }
    if (n.is_supplier()) {
      if (n.pred != 0) {
        throw ValidationError(node_msg(n.id, "supplier may not name a predecessor"));
      }
      if (n.succ == 0) {
        throw ValidationError(node_msg(n.id, "supplier lacks a successor"));
      }
      auto it = index_.find(n.succ);
      if (it == index_.end() || it->second < 0) {
        throw ValidationError(node_msg(n.id, "successor " +
                                                 std::to_string(n.succ) +
                                                 " is not a node"));
      }
      const Node& c = nodes_[it->second];
      if (!c.is_customer()) {
        throw ValidationError(node_msg(n.id, "successor " +
                                                 std::to_string(n.succ) +
                                                 " is not a customer"));
      }
      if (c.pred != n.id) {
        throw ValidationError("pairing not mutual: node " +
                              std::to_string(n.id) + " successor " +
                              std::to_string(n.succ) +
                              " lacks matching predecessor");
      }
      if (n.q + c.q != 0.0) {
        throw ValidationError("pair (" + std::to_string(n.id) + ", " +
                              std::to_string(c.id) +
                              ") demands do not cancel");
      }
      pairs_.emplace_back(n.id, c.id);
    } else {
      if (n.succ != 0) {
        throw ValidationError(node_msg(n.id, "customer may not name a successor"));
      }
      if (n.pred == 0) {
        throw ValidationError(node_msg(n.id, "customer lacks a predecessor"));
      }
      auto it = index_.find(n.pred);
      if (it == index_.end() || it->second < 0) {
        throw ValidationError(node_msg(n.id, "predecessor " +
                                                 std::to_string(n.pred) +
                                                 " is not a node"));
      }
      const Node& s = nodes_[it->second];
      if (!s.is_supplier() || s.succ != n.id) {
        throw ValidationError("pairing not mutual: node " +
                              std::to_string(n.id) + " predecessor " +
                              std::to_string(n.pred) +
                              " lacks matching successor");
      }
    }
  }

  if (n_prime() % 2 != 0) {
    throw ValidationError("odd number of non-depot nodes");
  }
  const auto suppliers = static_cast<int>(pairs_.size());
  if (suppliers * 2 != n_prime()) {
    throw ValidationError("supplier count does not match customer count");
  }

  if (fleet_.capacity <= 0.0) throw ValidationError("fleet capacity must be > 0");
  if (fleet_.cost_per_distance <= 0.0) {
    throw ValidationError("fleet cost_per_distance must be > 0");
  }
  if (fleet_.speed <= 0.0) throw ValidationError("fleet speed must be > 0");
  if (fleet_.max_vehicles <= 0) fleet_.max_vehicles = n_prime() / 2;

  for (auto [i, j] : missing_arcs) {
    if (!index_.count(i) || !index_.count(j)) {
      throw ValidationError("missing arc (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") names an unknown node");
    }
    missing_arcs_.push_back(normalize_arc(i, j));
  }
  std::sort(missing_arcs_.begin(), missing_arcs_.end());
  missing_arcs_.erase(
      std::unique(missing_arcs_.begin(), missing_arcs_.end()),
      missing_arcs_.end());
}

const Node& Instance::node(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw ValidationError("unknown node id " + std::to_string(id));
  }
  return it->second < 0 ? depot_ : nodes_[it->second];
}

double Instance::distance(int i, int j) const {
  const Node& a = node(i);
  const Node& b = node(j);
  if (i == j) return 0.0;
  if (!missing_arcs_.empty() &&
      std::binary_search(missing_arcs_.begin(), missing_arcs_.end(),
                         normalize_arc(i, j))) {
    return std::numeric_limits<double>::infinity();
  }
  return std::hypot(a.x - b.x, a.y - b.y);
}

double Instance::travel_time(int i, int j) const {
  return distance(i, j) / fleet_.speed;
}

Instance Instance::with_fleet(Fleet fleet) const {
  std::vector<Node> all;
  all.reserve(nodes_.size() + 1);
  all.push_back(depot_);
  all.insert(all.end(), nodes_.begin(), nodes_.end());
  return Instance(name_, fleet, std::move(all), missing_arcs_);
}

namespace {

using nlohmann::json;

Node node_from_json(const json& j) {
  Node n;
  n.id = j.at("id").get<int>();
  n.x = j.at("x").get<double>();
  n.y = j.at("y").get<double>();
  n.q = j.at("q").get<double>();
  n.e = j.at("e").get<double>();
  n.l = j.at("l").get<double>();
  n.s = j.at("s").get<double>();
  n.succ = j.at("succ").get<int>();
  n.pred = j.at("pred").get<int>();
  return n;
}

}  // namespace

Instance parse_instance(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
  try {
    std::string name = doc.at("name").get<std::string>();
    const json& jf = doc.at("fleet");
    Fleet fleet;
    fleet.capacity = jf.at("capacity").get<double>();
    fleet.cost_per_distance = jf.at("cost_per_distance").get<double>();
    fleet.speed = jf.at("speed").get<double>();
    fleet.max_vehicles = jf.value("max_vehicles", 0);

    std::vector<Node> nodes;
    for (const json& jn : doc.at("nodes")) nodes.push_back(node_from_json(jn));

    std::vector<std::pair<int, int>> missing;
    if (doc.contains("missing_arcs")) {
      for (const json& ja : doc.at("missing_arcs")) {
        if (!ja.is_array() || ja.size() != 2) {
          throw ParseError("missing_arcs entries must be [i, j] pairs");
        }
        missing.emplace_back(ja[0].get<int>(), ja[1].get<int>());
      }
    }
    return Instance(std::move(name), fleet, std::move(nodes),
                    std::move(missing));
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance document schema: ") + e.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["name"] = inst.name();
  doc["fleet"] = {{"capacity", inst.fleet().capacity},
                  {"cost_per_distance", inst.fleet().cost_per_distance},
                  {"speed", inst.fleet().speed},
                  {"max_vehicles", inst.fleet().max_vehicles}};
  json nodes = json::array();
  auto push = [&nodes](const Node& n) {
    nodes.push_back({{"id", n.id},
                     {"x", n.x},
                     {"y", n.y},
                     {"q", n.q},
                     {"e", n.e},
                     {"l", n.l},
                     {"s", n.s},
                     {"succ", n.succ},
                     {"pred", n.pred}});
  };
  push(inst.depot());
  for (const Node& n : inst.nodes()) push(n);
  doc["nodes"] = std::move(nodes);
  if (!inst.missing_arcs().empty()) {
    json arcs = json::array();
    for (auto [i, j] : inst.missing_arcs()) arcs.push_back({i, j});
    doc["missing_arcs"] = std::move(arcs);
  }
  return doc.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("no such file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace pdptw
