#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <system_error>

#include "lastmile/anneal.hpp"
#include "lastmile/baseline.hpp"
#include "lastmile/io.hpp"

namespace lastmile {

/// One row of the fleet comparison table.
struct ComparisonRow {
  std::string instance_name;
  int n_vehicles = 0;
  int n_passengers = 0;
  int n_deliveries = 0;
  int n_customers = 0;
  double baseline_cost = 0.0;
  double integrated_cost = 0.0;
  double reduction = 0.0;
};

inline ComparisonRow make_comparison_row(std::string name, int vehicles,
                                         int passengers, int deliveries,
                                         double baseline_cost,
                                         double integrated_cost) {
  return {std::move(name), vehicles,      passengers,      deliveries,
          passengers + deliveries, baseline_cost, integrated_cost,
          reduction_percent(baseline_cost, integrated_cost)};
}

inline ComparisonRow make_comparison_row(const Instance& inst,
                                         const BaselineReport& baseline,
                                         const SolveReport& integrated) {
  return make_comparison_row(inst.name, integrated.fleet_size,
                             inst.count_passengers(), inst.count_parcels(),
                             baseline.combined_cost, integrated.best_cost);
}

/// Shortest decimal text that parses back to the same double.
inline std::string format_full(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

inline std::string format_fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

inline constexpr const char* kCsvHeader =
    "instance,vehicles,passengers,deliveries,customers,baseline_cost,"
    "integrated_cost,reduction_pct";

inline std::string to_csv(const ComparisonRow& row) {
  return row.instance_name + "," + std::to_string(row.n_vehicles) + "," +
         std::to_string(row.n_passengers) + "," +
         std::to_string(row.n_deliveries) + "," +
         std::to_string(row.n_customers) + "," + format_full(row.baseline_cost) +
         "," + format_full(row.integrated_cost) + "," +
         format_full(row.reduction);
}

/// Operational time the integrated fleet spends beyond the baseline
/// passenger fleet, at model scale and multiplied up to real scale.
struct TimePenalty {
  double total_original = 0.0;
  double total_scaled = 0.0;
  double average_original = 0.0;
  double average_scaled = 0.0;
};

inline TimePenalty time_penalty_from_total(double total_original_minutes,
                                           int fleet_size, double scale_factor) {
  if (fleet_size < 1) throw std::domain_error("fleet size must be positive");
  TimePenalty t;
  t.total_original = total_original_minutes;
  t.total_scaled = total_original_minutes * scale_factor;
  t.average_original = t.total_original / fleet_size;
  t.average_scaled = t.total_scaled / fleet_size;
  return t;
}

inline TimePenalty time_penalty(const SolveReport& integrated,
                                const BaselineReport& baseline,
                                const CostParams& params) {
  if (!(params.vehicle_speed > 0.0)) {
    throw std::domain_error("vehicle speed must be positive");
  }
  const double integrated_min = integrated.best_distance / params.vehicle_speed / 60.0;
  const double passenger_min =
      baseline.passenger_report.best_distance / params.vehicle_speed / 60.0;
  return time_penalty_from_total(integrated_min - passenger_min,
                                 integrated.fleet_size, params.scale_factor);
}

inline json breakdown_to_json(const CostBreakdown& b) {
  return {{"revenue_from_hub", b.revenue_from_hub},
          {"revenue_to_hub", b.revenue_to_hub},
          {"running_cost", b.running_cost},
          {"maintenance_cost", b.maintenance_cost},
          {"detour_cost", b.detour_cost},
          {"total_cost", b.total_cost},
          {"profit", b.profit}};
}

/// Wall time is left out so equal seeds give byte-identical documents.
inline json report_to_json(const SolveReport& r) {
  json trace = json::array();
  for (const TracePoint& p : r.cost_trace) trace.push_back({p.iteration, p.cost});
  return {{"seed", r.seed},
          {"fleet_size", r.fleet_size},
          {"iterations", r.iterations},
          {"temp_max", r.temp_max},
          {"best_cost", r.best_cost},
          {"best_profit", r.best_profit},
          {"best_distance", r.best_distance},
          {"accepted_moves", r.accepted_moves},
          {"breakdown", breakdown_to_json(r.breakdown)},
          {"best_plan", plan_to_json(r.best_plan)},
          {"cost_trace", trace}};
}

inline json report_to_json(const BaselineReport& r) {
  return {{"combined_cost", r.combined_cost},
          {"combined_profit", r.combined_profit},
          {"passenger_report", report_to_json(r.passenger_report)},
          {"delivery_report", report_to_json(r.delivery_report)}};
}

inline json row_to_json(const ComparisonRow& row) {
  return {{"instance", row.instance_name},
          {"vehicles", row.n_vehicles},
          {"passengers", row.n_passengers},
          {"deliveries", row.n_deliveries},
          {"customers", row.n_customers},
          {"baseline_cost", row.baseline_cost},
          {"integrated_cost", row.integrated_cost},
          {"reduction_pct", row.reduction}};
}

inline json penalty_to_json(const TimePenalty& t) {
  return {{"total_original_min", t.total_original},
          {"total_scaled_min", t.total_scaled},
          {"average_original_min", t.average_original},
          {"average_scaled_min", t.average_scaled}};
}

}  // namespace lastmile
