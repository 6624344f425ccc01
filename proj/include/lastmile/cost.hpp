#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lastmile/geometry.hpp"
#include "lastmile/model.hpp"

namespace lastmile {

/// One vehicle's visit sequence; the hub is implicit at both ends.
struct Route {
  int vehicle_id = 0;
  std::vector<NodeId> stops;

  friend bool operator==(const Route&, const Route&) = default;
};

struct RoutingPlan {
  std::vector<Route> routes;

  friend bool operator==(const RoutingPlan&, const RoutingPlan&) = default;

  std::size_t stop_count() const {
    std::size_t n = 0;
    for (const Route& r : routes) n += r.stops.size();
    return n;
  }
};

inline double route_distance(const Route& route, const Instance& inst) {
  double total = 0.0;
  NodeId prev = kHubId;
  for (NodeId s : route.stops) {
    inst.customer(s);
    total += inst.distance(prev, s);
    prev = s;
  }
  if (!route.stops.empty()) total += inst.distance(prev, kHubId);
  return total;
}

inline int route_load(const Route& route, const Instance& inst) {
  int load = 0;
  for (NodeId s : route.stops) load += inst.params.units_for(inst.customer(s));
  return load;
}

/// Sum of detour extra distances over the route's parcel stops, each
/// measured against its immediate neighbours (the hub at either end).
inline double route_detour_distance(const Route& route, const Instance& inst) {
  double total = 0.0;
  const std::size_t n = route.stops.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Node& node = inst.customer(route.stops[k]);
    if (node.kind != NodeKind::Parcel) continue;
    const NodeId prev = k == 0 ? kHubId : route.stops[k - 1];
    const NodeId next = k + 1 == n ? kHubId : route.stops[k + 1];
    total += detour_extra_distance(inst.location(prev), inst.location(next),
                                   node.location);
  }
  return total;
}

/// Variable part of a route's cost: running plus detour surcharge.
inline double route_cost(const Route& route, const Instance& inst) {
  return inst.params.running_cost * route_distance(route, inst) +
         inst.params.detour_rate * route_detour_distance(route, inst);
}

/// Flow variables implied by a plan. Per-node vectors are indexed by id.
struct FlowSummary {
  using Edge = std::pair<NodeId, NodeId>;

  std::map<Edge, int> edge_vehicles;  // U_ij
  std::map<Edge, int> edge_used;      // x_ij
  std::vector<int> node_visited;      // x_i
  std::vector<int> served_from_hub;   // D_0i
  std::vector<int> served_to_hub;     // D_i0
  std::vector<int> parcels_delivered;

  int in_degree(NodeId id) const {
    int n = 0;
    for (const auto& [edge, count] : edge_vehicles) {
      if (edge.second == id) n += count;
    }
    return n;
  }

  int out_degree(NodeId id) const {
    int n = 0;
    for (const auto& [edge, count] : edge_vehicles) {
      if (edge.first == id) n += count;
    }
    return n;
  }
};

/// Every visit serves the node's full request count, so a node visited
/// twice shows served demand above its requests.
inline FlowSummary flow_summary(const RoutingPlan& plan, const Instance& inst) {
  FlowSummary flow;
  const std::size_t n = inst.nodes.size();
  flow.node_visited.assign(n, 0);
  flow.served_from_hub.assign(n, 0);
  flow.served_to_hub.assign(n, 0);
  flow.parcels_delivered.assign(n, 0);

  for (const Route& route : plan.routes) {
    if (route.stops.empty()) continue;
    NodeId prev = kHubId;
    for (NodeId s : route.stops) {
      const Node& node = inst.customer(s);
      ++flow.edge_vehicles[{prev, s}];
      flow.node_visited[static_cast<std::size_t>(s)] = 1;
      switch (node.kind) {
        case NodeKind::PassengerFromHub:
          flow.served_from_hub[static_cast<std::size_t>(s)] += node.requests;
          break;
        case NodeKind::PassengerToHub:
          flow.served_to_hub[static_cast<std::size_t>(s)] += node.requests;
          break;
        case NodeKind::Parcel:
          flow.parcels_delivered[static_cast<std::size_t>(s)] += node.requests;
          break;
        case NodeKind::Hub:
          break;
      }
      prev = s;
    }
    ++flow.edge_vehicles[{prev, kHubId}];
  }
  for (const auto& [edge, count] : flow.edge_vehicles) {
    flow.edge_used[edge] = count > 0 ? 1 : 0;
  }
  return flow;
}

struct CostBreakdown {
  double revenue_from_hub = 0.0;
  double revenue_to_hub = 0.0;
  double running_cost = 0.0;
  double maintenance_cost = 0.0;
  double detour_cost = 0.0;
  double total_cost = 0.0;
  double profit = 0.0;

  double revenue() const { return revenue_from_hub + revenue_to_hub; }
};

/// Evaluates the daily profit objective. Passenger revenue is priced on
/// the direct hub distance; maintenance is charged on the provisioned
/// integrated fleet, whether or not every vehicle is used.
inline CostBreakdown plan_cost_breakdown(const RoutingPlan& plan,
                                         const Instance& inst) {
  const CostParams& p = inst.params;
  const FlowSummary flow = flow_summary(plan, inst);

  CostBreakdown out;
  for (std::size_t i = 1; i < inst.nodes.size(); ++i) {
    const double d0i = inst.distance(kHubId, static_cast<NodeId>(i));
    out.revenue_from_hub += flow.served_from_hub[i] * d0i;
    out.revenue_to_hub += flow.served_to_hub[i] * d0i;
  }
  out.revenue_from_hub *= p.price_rate;
  out.revenue_to_hub *= p.price_rate;

  double distance = 0.0;
  double detour = 0.0;
  for (const Route& route : plan.routes) {
    distance += route_distance(route, inst);
    detour += route_detour_distance(route, inst);
  }
  out.running_cost = p.running_cost * distance;
  out.detour_cost = p.detour_rate * detour;
  out.maintenance_cost = p.maintenance * inst.fleet.integrated_size;
  out.total_cost = out.running_cost + out.maintenance_cost + out.detour_cost;
  out.profit = out.revenue_from_hub + out.revenue_to_hub - out.total_cost;
  return out;
}

inline double plan_distance(const RoutingPlan& plan, const Instance& inst) {
  double total = 0.0;
  for (const Route& route : plan.routes) total += route_distance(route, inst);
  return total;
}

enum class ViolationKind {
  CapacityExceeded,
  CustomerUnserved,
  CustomerDuplicated,
  UnknownNode,
  FlowImbalance,
  DemandOversatisfied,
  FleetExceeded,
};

constexpr std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::CapacityExceeded: return "capacity_exceeded";
    case ViolationKind::CustomerUnserved: return "customer_unserved";
    case ViolationKind::CustomerDuplicated: return "customer_duplicated";
    case ViolationKind::UnknownNode: return "unknown_node";
    case ViolationKind::FlowImbalance: return "flow_imbalance";
    case ViolationKind::DemandOversatisfied: return "demand_oversatisfied";
    case ViolationKind::FleetExceeded: return "fleet_exceeded";
  }
  return "unknown";
}

/// route_id is the index of the route within the plan.
struct Violation {
  ViolationKind kind;
  std::optional<int> route_id;
  std::optional<NodeId> node_id;
  std::string detail;
};

/// Flow-level constraint checks on a summary: conservation at every node,
/// served demand bounded by requests, no demand at unvisited nodes, a
/// departing vehicle for every served to-hub passenger and nonnegative
/// counts. Nodes in `skip_demand` are not checked for oversatisfaction.
inline std::vector<Violation> validate_flow(
    const FlowSummary& flow, const Instance& inst,
    const std::set<NodeId>& skip_demand = {}) {
  std::vector<Violation> out;
  const std::size_t n = inst.nodes.size();

  std::vector<int> in(n, 0);
  std::vector<int> outgoing(n, 0);
  for (const auto& [edge, count] : flow.edge_vehicles) {
    const auto [from, to] = edge;
    if (count < 0) {
      out.push_back({ViolationKind::FlowImbalance, std::nullopt, from,
                     "negative vehicle count on edge " + std::to_string(from) +
                         "->" + std::to_string(to)});
    }
    if (from >= 0 && static_cast<std::size_t>(from) < n) outgoing[from] += count;
    if (to >= 0 && static_cast<std::size_t>(to) < n) in[to] += count;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i] != outgoing[i]) {
      out.push_back({ViolationKind::FlowImbalance, std::nullopt,
                     static_cast<NodeId>(i),
                     std::to_string(in[i]) + " vehicles enter, " +
                         std::to_string(outgoing[i]) + " leave"});
    }
  }

  auto at = [](const std::vector<int>& v, std::size_t i) {
    return i < v.size() ? v[i] : 0;
  };
  for (std::size_t i = 1; i < n; ++i) {
    const NodeId id = static_cast<NodeId>(i);
    const Node& node = inst.nodes[i];
    const int from_hub = at(flow.served_from_hub, i);
    const int to_hub = at(flow.served_to_hub, i);
    const int parcels = at(flow.parcels_delivered, i);
    const int served = from_hub + to_hub + parcels;

    if (from_hub < 0 || to_hub < 0 || parcels < 0) {
      out.push_back({ViolationKind::FlowImbalance, std::nullopt, id,
                     "negative served demand"});
    }
    if (at(flow.node_visited, i) == 0 && served > 0) {
      out.push_back({ViolationKind::DemandOversatisfied, std::nullopt, id,
                     "demand served at an unvisited node"});
      continue;
    }
    const int allowed_from = node.kind == NodeKind::PassengerFromHub ? node.requests : 0;
    const int allowed_to = node.kind == NodeKind::PassengerToHub ? node.requests : 0;
    const int allowed_parcels = node.kind == NodeKind::Parcel ? node.requests : 0;
    if (!skip_demand.contains(id) &&
        (from_hub > allowed_from || to_hub > allowed_to ||
         parcels > allowed_parcels)) {
      out.push_back({ViolationKind::DemandOversatisfied, std::nullopt, id,
                     "served " + std::to_string(served) + " of " +
                         std::to_string(node.requests) + " requests"});
    }
    if (to_hub > 0 && outgoing[i] == 0) {
      out.push_back({ViolationKind::FlowImbalance, std::nullopt, id,
                     "to-hub passenger served but no vehicle departs"});
    }
  }
  return out;
}

/// Returns every feasibility violation of `plan`; empty iff feasible.
/// Stops that do not name a customer are reported and then ignored for
/// the remaining checks.
inline std::vector<Violation> validate_plan(const RoutingPlan& plan,
                                            const Instance& inst,
                                            bool require_all_served = true) {
  std::vector<Violation> out;
  RoutingPlan known;
  known.routes.reserve(plan.routes.size());

  for (std::size_t r = 0; r < plan.routes.size(); ++r) {
    Route filtered{plan.routes[r].vehicle_id, {}};
    for (NodeId s : plan.routes[r].stops) {
      if (inst.is_customer(s)) {
        filtered.stops.push_back(s);
      } else {
        out.push_back({ViolationKind::UnknownNode, static_cast<int>(r), s,
                       s == kHubId ? "hub listed as a stop"
                                   : "node id not in instance"});
      }
    }
    known.routes.push_back(std::move(filtered));
  }

  int used = 0;
  for (const Route& route : known.routes) used += route.stops.empty() ? 0 : 1;
  if (used > inst.fleet.integrated_size) {
    out.push_back({ViolationKind::FleetExceeded, std::nullopt, std::nullopt,
                   std::to_string(used) + " routes for a fleet of " +
                       std::to_string(inst.fleet.integrated_size)});
  }

  for (std::size_t r = 0; r < known.routes.size(); ++r) {
    const int load = route_load(known.routes[r], inst);
    if (load > inst.params.capacity_units) {
      out.push_back({ViolationKind::CapacityExceeded, static_cast<int>(r),
                     std::nullopt,
                     "load " + std::to_string(load) + " exceeds capacity " +
                         std::to_string(inst.params.capacity_units)});
    }
  }

  std::vector<std::set<int>> routes_of(inst.nodes.size());
  for (std::size_t r = 0; r < known.routes.size(); ++r) {
    for (NodeId s : known.routes[r].stops) {
      routes_of[static_cast<std::size_t>(s)].insert(static_cast<int>(r));
    }
  }
  std::set<NodeId> duplicated;
  for (std::size_t i = 1; i < inst.nodes.size(); ++i) {
    const NodeId id = static_cast<NodeId>(i);
    if (routes_of[i].size() > 1) {
      duplicated.insert(id);
      out.push_back({ViolationKind::CustomerDuplicated, std::nullopt, id,
                     "served by " + std::to_string(routes_of[i].size()) +
                         " routes"});
    } else if (routes_of[i].empty() && require_all_served) {
      out.push_back({ViolationKind::CustomerUnserved, std::nullopt, id,
                     "customer not visited"});
    }
  }

  auto flow = validate_flow(flow_summary(known, inst), inst, duplicated);
  out.insert(out.end(), flow.begin(), flow.end());
  return out;
}

/// Percentage saving of `integrated_cost` against `baseline_cost`.
/// Negative when the integrated service is more expensive.
inline double reduction_percent(double baseline_cost, double integrated_cost) {
  if (!(baseline_cost > 0.0)) {
    throw std::domain_error("baseline cost must be positive");
  }
  return 100.0 * (baseline_cost - integrated_cost) / baseline_cost;
}

}  // namespace lastmile
