#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lastmile/cost.hpp"
#include "lastmile/errors.hpp"
#include "lastmile/model.hpp"

namespace lastmile {

struct OracleResult {
  RoutingPlan best_plan;
  double best_cost = 0.0;
  std::size_t plans_examined = 0;
};

inline constexpr std::size_t kMaxOrderStops = 12;
inline constexpr std::size_t kMaxOracleCustomers = 10;
inline constexpr int kMaxOracleFleet = 4;

namespace detail {

inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Subset DP over (visited set, last stop, stop before it). Each leg costs
/// running_rate per meter; leaving a parcel adds detour_rate times its
/// extra distance against its two neighbours. The predecessor is part of
/// the state because that surcharge depends on both sides of the parcel.
/// Ties resolve to the lexicographically smallest id sequence.
class RouteOrderSolver {
 public:
  RouteOrderSolver(std::span<const NodeId> stops, const Instance& inst,
                   double running_rate, double detour_rate)
      : stops_(stops.begin(), stops.end()),
        running_(running_rate),
        detour_(detour_rate) {
    if (stops_.size() > kMaxOrderStops) {
      throw SizeLimitExceeded("route ordering is limited to " +
                              std::to_string(kMaxOrderStops) + " stops");
    }
    std::sort(stops_.begin(), stops_.end());
    if (std::adjacent_find(stops_.begin(), stops_.end()) != stops_.end()) {
      throw std::invalid_argument("route stops must be distinct");
    }
    const std::size_t k = stops_.size();
    hub_ = k;
    points_.reserve(k + 1);
    for (NodeId s : stops_) {
      const Node& node = inst.customer(s);
      points_.push_back(node.location);
      parcel_.push_back(node.kind == NodeKind::Parcel);
    }
    points_.push_back(inst.hub().location);
    memo_.assign((std::size_t{1} << k) * k * (k + 1),
                 std::numeric_limits<double>::quiet_NaN());
  }

  /// Returns the optimal cost and fills `order` with the stop sequence.
  double solve(std::vector<NodeId>& order) {
    order.clear();
    const std::size_t k = stops_.size();
    if (k == 0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      best = std::min(best, leg(hub_, j) + to_go(bit(j), j, hub_));
    }
    // Walk forward, taking the smallest id among near-optimal continuations.
    std::uint32_t visited = 0;
    std::size_t last = hub_;
    std::size_t prev = hub_;
    std::vector<double> via(k);
    while (order.size() < k) {
      double lowest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < k; ++j) {
        via[j] = (visited & bit(j))
                     ? std::numeric_limits<double>::infinity()
                     : step(last, prev, j) + to_go(visited | bit(j), j, last);
        lowest = std::min(lowest, via[j]);
      }
      std::size_t pick = 0;
      while ((visited & bit(pick)) || !nearly_equal(via[pick], lowest)) ++pick;
      visited |= bit(pick);
      prev = last;
      last = pick;
      order.push_back(stops_[pick]);
    }
    return best;
  }

 private:
  static std::uint32_t bit(std::size_t j) { return std::uint32_t{1} << j; }

  double leg(std::size_t from, std::size_t to) const {
    return running_ * euclidean_distance(points_[from], points_[to]);
  }

  double surcharge(std::size_t prev, std::size_t at, std::size_t next) const {
    if (at == hub_ || !parcel_[at]) return 0.0;
    return detour_ * detour_extra_distance(points_[prev], points_[next], points_[at]);
  }

  /// Cost of going last -> next (the hub when next == hub_), including the
  /// surcharge for leaving `last`, which was entered from `prev`.
  double step(std::size_t last, std::size_t prev, std::size_t next) const {
    return leg(last, next) + surcharge(prev, last, next);
  }

  double to_go(std::uint32_t visited, std::size_t last, std::size_t prev) {
    const std::size_t k = stops_.size();
    double& slot = memo_[(static_cast<std::size_t>(visited) * k + last) * (k + 1) + prev];
    if (!std::isnan(slot)) return slot;
    if (visited == (bit(k) - 1)) {
      slot = step(last, prev, hub_);
      return slot;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      if (visited & bit(j)) continue;
      best = std::min(best, step(last, prev, j) +
                                to_go(visited | bit(j), j, last));
    }
    slot = best;
    return slot;
  }

  std::vector<NodeId> stops_;
  std::vector<Point> points_;
  std::vector<bool> parcel_;
  std::size_t hub_ = 0;
  double running_;
  double detour_;
  std::vector<double> memo_;
};

}  // namespace detail

/// Shortest hub-to-hub visiting order of `stops`.
inline Route optimal_route_order(std::span<const NodeId> stops,
                                 const Instance& inst) {
  detail::RouteOrderSolver solver(stops, inst, 1.0, 0.0);
  Route route;
  solver.solve(route.stops);
  return route;
}

/// Visiting order of `stops` minimizing running plus detour cost.
inline Route cheapest_route_order(std::span<const NodeId> stops,
                                  const Instance& inst) {
  detail::RouteOrderSolver solver(stops, inst, inst.params.running_cost,
                                  inst.params.detour_rate);
  Route route;
  solver.solve(route.stops);
  return route;
}

/// Exhaustive search over set partitions of the customers into at most
/// `fleet_size` capacity-feasible groups (restricted-growth strings),
/// each group in its cheapest order. Equal-cost plans resolve to the
/// lexicographically smallest route encoding.
inline OracleResult exact_solve(const Instance& inst, int fleet_size) {
  const std::size_t n = inst.customer_count();
  if (n > kMaxOracleCustomers || fleet_size > kMaxOracleFleet) {
    throw SizeLimitExceeded("exact solve is limited to " +
                            std::to_string(kMaxOracleCustomers) +
                            " customers and " + std::to_string(kMaxOracleFleet) +
                            " vehicles");
  }
  if (fleet_size < 0) throw std::invalid_argument("negative fleet size");

  const int capacity = inst.params.capacity_units;
  std::vector<NodeId> customers;
  std::vector<int> units;
  for (std::size_t i = 1; i <= n; ++i) {
    customers.push_back(static_cast<NodeId>(i));
    units.push_back(inst.params.units_for(inst.nodes[i]));
  }

  struct GroupPlan {
    double cost = 0.0;
    std::vector<NodeId> order;
  };
  std::vector<std::optional<GroupPlan>> groups(std::size_t{1} << n);
  auto group_plan = [&](std::uint32_t mask) -> const GroupPlan& {
    auto& slot = groups[mask];
    if (!slot) {
      std::vector<NodeId> members;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (std::uint32_t{1} << j)) members.push_back(customers[j]);
      }
      Route route = cheapest_route_order(members, inst);
      slot = GroupPlan{route_cost(route, inst), std::move(route.stops)};
    }
    return *slot;
  };

  const double maintenance = inst.params.maintenance * inst.fleet.integrated_size;
  std::vector<std::uint32_t> masks;
  std::vector<int> loads;
  std::optional<std::vector<std::vector<NodeId>>> best_routes;
  double best_cost = std::numeric_limits<double>::infinity();
  OracleResult result;

  auto evaluate = [&] {
    ++result.plans_examined;
    double cost = maintenance;
    for (std::uint32_t m : masks) cost += group_plan(m).cost;
    const bool tie = best_routes && detail::nearly_equal(cost, best_cost);
    if (best_routes && !tie && cost > best_cost) return;
    std::vector<std::vector<NodeId>> encoding;
    for (std::uint32_t m : masks) encoding.push_back(group_plan(m).order);
    if (tie && !(encoding < *best_routes)) return;
    best_cost = tie ? std::min(cost, best_cost) : cost;
    best_routes = std::move(encoding);
  };

  // Customer `j` joins an existing group or opens a new one.
  auto assign = [&](auto& self, std::size_t j) -> void {
    if (j == n) {
      evaluate();
      return;
    }
    for (std::size_t g = 0; g < masks.size(); ++g) {
      if (loads[g] + units[j] > capacity) continue;
      masks[g] |= std::uint32_t{1} << j;
      loads[g] += units[j];
      self(self, j + 1);
      masks[g] &= ~(std::uint32_t{1} << j);
      loads[g] -= units[j];
    }
    if (static_cast<int>(masks.size()) < fleet_size && units[j] <= capacity) {
      masks.push_back(std::uint32_t{1} << j);
      loads.push_back(units[j]);
      self(self, j + 1);
      masks.pop_back();
      loads.pop_back();
    }
  };
  assign(assign, 0);

  if (!best_routes) {
    throw InfeasibleFleet("no capacity-feasible partition into " +
                          std::to_string(fleet_size) + " vehicles");
  }
  for (int v = 0; v < fleet_size; ++v) {
    Route route{v, {}};
    if (static_cast<std::size_t>(v) < best_routes->size()) {
      route.stops = (*best_routes)[static_cast<std::size_t>(v)];
    }
    result.best_plan.routes.push_back(std::move(route));
  }
  result.best_cost = plan_cost_breakdown(result.best_plan, inst).total_cost;
  return result;
}

}  // namespace lastmile
