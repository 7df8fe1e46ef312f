#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pdptw {

// The document could not be read as the instance format at all.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The document parsed but violates a model invariant; the message names it.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vertex of the problem graph. q > 0 marks a supplier (succ names its
// paired customer), q < 0 a customer (pred names its paired supplier),
// q = 0 the depot. 0 in succ/pred means "no pairing".
struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double q = 0.0;
  double e = 0.0;
  double l = 0.0;
  double s = 0.0;
  int succ = 0;
  int pred = 0;

  bool is_supplier() const { return q > 0.0; }
  bool is_customer() const { return q < 0.0; }

  friend bool operator==(const Node&, const Node&) = default;
};

// Homogeneous fleet parameters shared by every vehicle.
struct Fleet {
  double capacity = 0.0;
  double cost_per_distance = 1.0;
  double speed = 1.0;
  int max_vehicles = 0;

  friend bool operator==(const Fleet&, const Fleet&) = default;
};

// Immutable problem data: one depot (id 0), paired pickup/delivery nodes,
// fleet parameters, and the travel geometry. Safe to share across threads.
class Instance {
 public:
  // Validates every model invariant; throws ValidationError naming the
  // first violated one. `all_nodes` must contain the depot row (id 0).
  // max_vehicles <= 0 in `fleet` selects the default floor(N'/2).
  Instance(std::string name, Fleet fleet, std::vector<Node> all_nodes,
           std::vector<std::pair<int, int>> missing_arcs = {});

  const std::string& name() const { return name_; }
  const Fleet& fleet() const { return fleet_; }
  const Node& depot() const { return depot_; }

  // Non-depot nodes in document order.
  const std::vector<Node>& nodes() const { return nodes_; }
  int n_prime() const { return static_cast<int>(nodes_.size()); }

  bool has_node(int id) const { return index_.count(id) != 0; }
  // Depot included; throws ValidationError on an unknown id.
  const Node& node(int id) const;

  // (supplier id, customer id) in document order of the suppliers.
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  // Arcs removed from the graph, normalized as (min id, max id).
  const std::vector<std::pair<int, int>>& missing_arcs() const {
    return missing_arcs_;
  }

  // Euclidean distance; +infinity across a missing arc; 0 for i == j.
  double distance(int i, int j) const;
  // distance / fleet speed.
  double travel_time(int i, int j) const;

  // Same nodes and geometry under different fleet parameters (revalidated).
  Instance with_fleet(Fleet fleet) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.name_ == b.name_ && a.fleet_ == b.fleet_ && a.depot_ == b.depot_ &&
           a.nodes_ == b.nodes_ && a.missing_arcs_ == b.missing_arcs_;
  }

 private:
  std::string name_;
  Fleet fleet_;
  Node depot_;
  std::vector<Node> nodes_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::pair<int, int>> missing_arcs_;
  std::unordered_map<int, int> index_;  // id -> nodes_ index, depot -> -1
};

// Reads a UTF-8 JSON instance document. Throws ParseError on malformed
// input, ValidationError when an invariant fails.
Instance parse_instance(const std::string& document);

// Inverse of parse_instance up to structural identity.
std::string serialize_instance(const Instance& inst);

// Reads and parses an instance file; IO failures surface as ParseError.
Instance load_instance(const std::string& path);

}  // namespace pdptw
