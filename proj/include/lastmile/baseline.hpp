#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lastmile/anneal.hpp"
#include "lastmile/model.hpp"

namespace lastmile {

/// Sub-problem with contiguous ids; original_ids[new_id] maps back.
struct SubInstance {
  Instance instance;
  std::vector<NodeId> original_ids;
};

struct SplitInstance {
  SubInstance passenger;
  SubInstance parcel;
};

/// Partitions customers into a passenger-only and a parcel-only problem,
/// each provisioned with its dedicated baseline fleet.
inline SplitInstance split_instance(const Instance& inst) {
  auto make = [&](auto keep, int fleet_size, const char* suffix) {
    SubInstance sub;
    sub.instance.name = inst.name + "/" + suffix;
    sub.instance.params = inst.params;
    sub.instance.fleet = inst.fleet;
    sub.instance.fleet.integrated_size = fleet_size;
    sub.instance.nodes.push_back(inst.hub());
    sub.original_ids.push_back(kHubId);
    for (const Node& node : inst.nodes) {
      if (node.kind == NodeKind::Hub || !keep(node)) continue;
      Node copy = node;
      copy.id = static_cast<NodeId>(sub.instance.nodes.size());
      sub.instance.nodes.push_back(copy);
      sub.original_ids.push_back(node.id);
    }
    return sub;
  };
  SplitInstance split;
  split.passenger = make([](const Node& n) { return is_passenger(n.kind); },
                         inst.fleet.baseline_passenger_size, "passenger");
  split.parcel = make([](const Node& n) { return n.kind == NodeKind::Parcel; },
                      inst.fleet.baseline_delivery_size, "delivery");
  split.passenger.instance.fleet.baseline_delivery_size = 0;
  split.parcel.instance.fleet.baseline_passenger_size = 0;
  return split;
}

struct BaselineReport {
  SolveReport passenger_report;
  SolveReport delivery_report;
  double combined_cost = 0.0;
  double combined_profit = 0.0;
};

inline BaselineReport combine_baseline(SolveReport passenger, SolveReport delivery) {
  BaselineReport report;
  report.combined_cost = passenger.best_cost + delivery.best_cost;
  report.combined_profit = passenger.best_profit + delivery.best_profit;
  report.passenger_report = std::move(passenger);
  report.delivery_report = std::move(delivery);
  return report;
}

/// Two dedicated fleets: passengers with `cfg.seed`, parcels with
/// `cfg.seed + 1`, same budget each.
inline BaselineReport solve_baseline(const Instance& inst, const SAConfig& cfg) {
  const SplitInstance split = split_instance(inst);
  auto run = [&](const SubInstance& sub, std::uint64_t seed, const char* which) {
    SAConfig sub_cfg = cfg;
    sub_cfg.seed = seed;
    try {
      return solve_sa(sub.instance, sub.instance.fleet.integrated_size, sub_cfg);
    } catch (const InfeasibleFleet& e) {
      throw InfeasibleFleet(std::string(which) + " fleet: " + e.what());
    }
  };
  SolveReport passenger = run(split.passenger, cfg.seed, "passenger");
  SolveReport delivery = run(split.parcel, cfg.seed + 1, "delivery");
  return combine_baseline(std::move(passenger), std::move(delivery));
}

}  // namespace lastmile
