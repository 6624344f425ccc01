#include "lastmile/baseline.hpp"

#include <gtest/gtest.h>

#include <set>

#include "lastmile/report.hpp"
#include "test_support.hpp"

namespace {

using namespace lastmile;
using fixtures::make_instance;

SAConfig quick(std::uint64_t seed = 1) {
  SAConfig cfg;
  cfg.iterations_max = 5000;
  cfg.seed = seed;
  return cfg;
}

TEST(SplitInstance, EightCustomers) {
  GenConfig cfg;
  cfg.n_customers = 8;
  const Instance inst = generate_instance(cfg);
  const SplitInstance split = split_instance(inst);
  EXPECT_EQ(split.passenger.instance.customer_count(), 6u);
  EXPECT_EQ(split.parcel.instance.customer_count(), 2u);
  EXPECT_EQ(split.passenger.instance.fleet.integrated_size, 3);
  EXPECT_EQ(split.parcel.instance.fleet.integrated_size, 1);
  EXPECT_EQ(split.passenger.instance.name, inst.name + "/passenger");
  EXPECT_EQ(split.parcel.instance.name, inst.name + "/delivery");
  EXPECT_NO_THROW(split.passenger.instance.validate());
  EXPECT_NO_THROW(split.parcel.instance.validate());
}

TEST(SplitInstance, PartitionsCustomersAndKeepsLocations) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenConfig cfg;
    cfg.n_customers = 1 + static_cast<int>(seed * 7 % 70);
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    const SplitInstance split = split_instance(inst);
    std::set<NodeId> seen;
    for (const SubInstance* sub : {&split.passenger, &split.parcel}) {
      ASSERT_EQ(sub->original_ids.size(), sub->instance.nodes.size());
      EXPECT_EQ(sub->original_ids[0], kHubId);
      EXPECT_EQ(sub->instance.hub().location, inst.hub().location);
      for (std::size_t i = 1; i < sub->instance.nodes.size(); ++i) {
        const NodeId original = sub->original_ids[i];
        EXPECT_TRUE(seen.insert(original).second);
        const Node& a = sub->instance.nodes[i];
        const Node& b = inst.nodes[static_cast<std::size_t>(original)];
        EXPECT_EQ(a.kind, b.kind);
        EXPECT_EQ(a.location, b.location);
        EXPECT_EQ(a.requests, b.requests);
      }
    }
    for (NodeId id : split.passenger.original_ids) {
      if (id != kHubId) {
        EXPECT_TRUE(is_passenger(inst.nodes[static_cast<std::size_t>(id)].kind));
      }
    }
    EXPECT_EQ(seen.size(), inst.customer_count());
  }
}

TEST(CombineBaseline, AddsSubFleetCosts) {
  SolveReport p;
  p.best_cost = 270.22;
  p.best_profit = -100.0;
  SolveReport d;
  d.best_cost = 386.09;
  d.best_profit = -200.5;
  const BaselineReport b = combine_baseline(p, d);
  EXPECT_DOUBLE_EQ(b.combined_cost, 656.31);
  EXPECT_DOUBLE_EQ(b.combined_profit, -300.5);
}

TEST(SolveBaseline, NoParcelsLeavesDeliveryFleetIdle) {
  const Instance inst = make_instance(
      {{NodeKind::PassengerFromHub, {30, 40}}, {NodeKind::PassengerToHub, {-30, 40}}});
  ASSERT_EQ(inst.fleet.baseline_delivery_size, 0);
  const BaselineReport b = solve_baseline(inst, quick());
  EXPECT_DOUBLE_EQ(b.delivery_report.best_cost, 0.0);
  EXPECT_EQ(b.delivery_report.fleet_size, 0);
  EXPECT_EQ(b.delivery_report.best_plan.stop_count(), 0u);
  EXPECT_DOUBLE_EQ(b.combined_cost, b.passenger_report.best_cost);
}

TEST(SolveBaseline, PassengerRoutesCarryAtMostTwo) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenConfig cfg;
    cfg.n_customers = 20;
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    const BaselineReport b = solve_baseline(inst, quick(seed));
    for (const Route& r : b.passenger_report.best_plan.routes) EXPECT_LE(r.stops.size(), 2u);
    const SplitInstance split = split_instance(inst);
    EXPECT_TRUE(validate_plan(b.passenger_report.best_plan, split.passenger.instance).empty());
    EXPECT_TRUE(validate_plan(b.delivery_report.best_plan, split.parcel.instance).empty());
    EXPECT_DOUBLE_EQ(b.combined_cost,
                     b.passenger_report.best_cost + b.delivery_report.best_cost);
  }
}

TEST(SolveBaseline, UsesSeedAndSeedPlusOne) {
  GenConfig gen;
  gen.n_customers = 14;
  const Instance inst = generate_instance(gen);
  const BaselineReport b = solve_baseline(inst, quick(5));
  EXPECT_EQ(b.passenger_report.seed, 5u);
  EXPECT_EQ(b.delivery_report.seed, 6u);
  EXPECT_EQ(report_to_json(b).dump(), report_to_json(solve_baseline(inst, quick(5))).dump());
}

TEST(SolveBaseline, InfeasibleSubFleetIsNamed) {
  Instance inst = make_instance({{NodeKind::PassengerFromHub, {1, 0}},
                                 {NodeKind::PassengerFromHub, {2, 0}},
                                 {NodeKind::PassengerFromHub, {3, 0}},
                                 {NodeKind::Parcel, {0, 1}}});
  inst.fleet.baseline_passenger_size = 1;
  try {
    solve_baseline(inst, quick());
    FAIL() << "expected InfeasibleFleet";
  } catch (const InfeasibleFleet& e) {
    EXPECT_NE(std::string(e.what()).find("passenger fleet"), std::string::npos);
  }
  inst.fleet.baseline_passenger_size = 2;
  inst.fleet.baseline_delivery_size = 0;
  try {
    solve_baseline(inst, quick());
    FAIL() << "expected InfeasibleFleet";
  } catch (const InfeasibleFleet& e) {
    EXPECT_NE(std::string(e.what()).find("delivery fleet"), std::string::npos);
  }
}

}  // namespace
