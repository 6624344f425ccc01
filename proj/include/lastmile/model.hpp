#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lastmile/errors.hpp"
#include "lastmile/geometry.hpp"
#include "lastmile/random.hpp"

namespace lastmile {

using NodeId = int;

inline constexpr NodeId kHubId = 0;

enum class NodeKind { Hub, PassengerFromHub, PassengerToHub, Parcel };

constexpr bool is_passenger(NodeKind kind) {
  return kind == NodeKind::PassengerFromHub || kind == NodeKind::PassengerToHub;
}

constexpr std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Hub: return "hub";
    case NodeKind::PassengerFromHub: return "passenger_from_hub";
    case NodeKind::PassengerToHub: return "passenger_to_hub";
    case NodeKind::Parcel: return "parcel";
  }
  return "unknown";
}

inline NodeKind node_kind_from_string(std::string_view text) {
  if (text == "hub") return NodeKind::Hub;
  if (text == "passenger_from_hub") return NodeKind::PassengerFromHub;
  if (text == "passenger_to_hub") return NodeKind::PassengerToHub;
  if (text == "parcel") return NodeKind::Parcel;
  throw ParseError("unknown node kind '" + std::string(text) + "'");
}

struct Node {
  NodeId id = kHubId;
  NodeKind kind = NodeKind::Hub;
  Point location;
  /// Trips requested on the node's OD pair; always 1 for parcels.
  int requests = 1;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Monetary rates are per meter; maintenance is per vehicle per day.
struct CostParams {
  double price_rate = 0.002;
  double running_cost = 0.0006;
  double maintenance = 10.0;
  double detour_rate = 0.0003;
  int capacity_units = 5;
  int passenger_units = 2;
  int parcel_units = 1;
  double vehicle_speed = 0.4;
  double scale_factor = 25.0;

  friend bool operator==(const CostParams&, const CostParams&) = default;

  /// Passengers that fit in one vehicle by capacity alone.
  int seats() const { return capacity_units / passenger_units; }

  int units_for(const Node& node) const {
    if (is_passenger(node.kind)) return passenger_units * node.requests;
    if (node.kind == NodeKind::Parcel) return parcel_units * node.requests;
    return 0;
  }

  void validate() const {
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!finite_nonneg(price_rate) || !finite_nonneg(running_cost) ||
        !finite_nonneg(maintenance) || !finite_nonneg(detour_rate)) {
      throw ValidationError("cost rates must be finite and nonnegative");
    }
    if (passenger_units < 1 || parcel_units < 1) {
      throw ValidationError("passenger_units and parcel_units must be >= 1");
    }
    if (capacity_units < std::max(passenger_units, parcel_units)) {
      throw ValidationError(
          "capacity_units must hold at least one passenger and one parcel");
    }
    if (!(vehicle_speed > 0.0) || !std::isfinite(vehicle_speed)) {
      throw ValidationError("vehicle_speed must be positive");
    }
    if (!(scale_factor > 0.0) || !std::isfinite(scale_factor)) {
      throw ValidationError("scale_factor must be positive");
    }
  }
};

struct FleetSpec {
  int integrated_size = 0;
  int baseline_passenger_size = 0;
  int baseline_delivery_size = 0;

  friend bool operator==(const FleetSpec&, const FleetSpec&) = default;
};

struct Instance {
  std::string name;
  CostParams params;
  FleetSpec fleet;
  /// Indexed by id: nodes[0] is the hub, nodes[i].id == i.
  std::vector<Node> nodes;

  friend bool operator==(const Instance&, const Instance&) = default;

  const Node& hub() const { return nodes.front(); }

  std::size_t customer_count() const {
    return nodes.empty() ? 0 : nodes.size() - 1;
  }

  bool is_customer(NodeId id) const {
    return id > kHubId && static_cast<std::size_t>(id) < nodes.size();
  }

  /// Customer lookup; throws UnknownNodeError for the hub or a missing id.
  const Node& customer(NodeId id) const {
    if (!is_customer(id)) throw UnknownNodeError(id);
    return nodes[static_cast<std::size_t>(id)];
  }

  const Point& location(NodeId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= nodes.size()) {
      throw UnknownNodeError(id);
    }
    return nodes[static_cast<std::size_t>(id)].location;
  }

  double distance(NodeId a, NodeId b) const {
    return euclidean_distance(location(a), location(b));
  }

  int count_passengers() const {
    return static_cast<int>(std::count_if(
        nodes.begin(), nodes.end(),
        [](const Node& n) { return is_passenger(n.kind); }));
  }

  int count_parcels() const {
    return static_cast<int>(std::count_if(
        nodes.begin(), nodes.end(),
        [](const Node& n) { return n.kind == NodeKind::Parcel; }));
  }

  int total_units() const {
    int units = 0;
    for (const Node& n : nodes) units += params.units_for(n);
    return units;
  }

  /// Checks id contiguity, the single hub at id 0, request counts and
  /// coordinate finiteness. Nodes must already be sorted by id.
  void validate() const {
    params.validate();
    if (nodes.empty() || std::none_of(nodes.begin(), nodes.end(), [](const Node& n) {
          return n.kind == NodeKind::Hub;
        })) {
      throw ValidationError("no hub node");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      if (n.id != static_cast<NodeId>(i)) {
        throw ValidationError("node ids must be contiguous from 0; found id " +
                              std::to_string(n.id) + " at position " +
                              std::to_string(i));
      }
      if ((n.id == kHubId) != (n.kind == NodeKind::Hub)) {
        throw ValidationError("node " + std::to_string(n.id) +
                              ": id 0 is reserved for the single hub");
      }
      if (n.id != kHubId && n.requests < 1) {
        throw ValidationError("node " + std::to_string(n.id) +
                              ": requests must be >= 1");
      }
      if (!std::isfinite(n.location.x) || !std::isfinite(n.location.y)) {
        throw ValidationError("node " + std::to_string(n.id) +
                              ": coordinates must be finite");
      }
    }
    if (fleet.integrated_size < 0 || fleet.baseline_passenger_size < 0 ||
        fleet.baseline_delivery_size < 0) {
      throw ValidationError("fleet sizes must be nonnegative");
    }
  }
};

struct GenConfig {
  int n_customers = 8;
  double passenger_fraction = 2.0 / 3.0;
  double region_side = 500.0;
  bool hub_at_center = true;
  std::uint64_t seed = 1;

  void validate() const {
    if (n_customers < 1) {
      throw std::invalid_argument("n_customers must be at least 1");
    }
    if (!(passenger_fraction > 0.0 && passenger_fraction < 1.0)) {
      throw std::invalid_argument("passenger_fraction must lie in (0, 1)");
    }
    if (!(region_side > 0.0) || !std::isfinite(region_side)) {
      throw std::invalid_argument("region_side must be positive");
    }
  }
};

namespace detail {
inline int ceil_div(int num, int den) { return (num + den - 1) / den; }
}  // namespace detail

/// Number of passenger locations for `n` customers under `fraction`.
/// The epsilon absorbs representation error in fractions like 2/3.
inline int passenger_count_for(int n, double fraction) {
  return static_cast<int>(std::ceil(fraction * n - 1e-9));
}

/// Fleet sizes for a demand mix. The integrated fleet keeps one unit of
/// slack over the total demand and never seats more passengers per vehicle
/// than capacity allows; this reproduces the published vehicle counts for
/// all ten reference instances.
inline FleetSpec derive_fleet_sizes(int n_passengers, int n_parcels,
                                    const CostParams& params) {
  FleetSpec fleet;
  const int seats = std::max(1, params.seats());
  fleet.baseline_passenger_size = detail::ceil_div(n_passengers, seats);
  fleet.baseline_delivery_size =
      detail::ceil_div(n_parcels * params.parcel_units, params.capacity_units);
  if (n_passengers + n_parcels > 0) {
    const int units =
        n_passengers * params.passenger_units + n_parcels * params.parcel_units;
    fleet.integrated_size = std::max(fleet.baseline_passenger_size,
                                     units / params.capacity_units + 1);
  }
  return fleet;
}

inline Instance generate_instance(const GenConfig& cfg,
                                  const CostParams& params = {}) {
  cfg.validate();
  params.validate();
  Rng rng(cfg.seed);
  auto coordinate = [&] { return uniform01(rng) * cfg.region_side; };

  Instance inst;
  inst.name = "n" + std::to_string(cfg.n_customers) + "_s" +
              std::to_string(cfg.seed);
  inst.params = params;

  Node hub;
  if (cfg.hub_at_center) {
    hub.location = {cfg.region_side / 2.0, cfg.region_side / 2.0};
  } else {
    hub.location.x = coordinate();
    hub.location.y = coordinate();
  }
  inst.nodes.push_back(hub);

  const int n_passengers =
      std::min(cfg.n_customers,
               passenger_count_for(cfg.n_customers, cfg.passenger_fraction));
  for (int i = 1; i <= cfg.n_customers; ++i) {
    Node node;
    node.id = i;
    if (i <= n_passengers) {
      node.kind = (rng() & 1U) ? NodeKind::PassengerToHub
                               : NodeKind::PassengerFromHub;
    } else {
      node.kind = NodeKind::Parcel;
    }
    node.location.x = coordinate();
    node.location.y = coordinate();
    inst.nodes.push_back(node);
  }
  inst.fleet = derive_fleet_sizes(n_passengers, cfg.n_customers - n_passengers,
                                  params);
  return inst;
}

}  // namespace lastmile
