#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lastmile/cost.hpp"
#include "lastmile/errors.hpp"
#include "lastmile/model.hpp"

namespace lastmile {

using json = nlohmann::ordered_json;

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <typename T>
T field(const json& obj, const std::string& key, const std::string& where) {
  const std::string name = where.empty() ? key : where + "." + key;
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError("missing field '" + name + "'");
  }
  const json& value = obj.at(key);
  if constexpr (std::is_same_v<T, std::string>) {
    if (!value.is_string()) throw ParseError("field '" + name + "' must be a string");
  } else if constexpr (std::is_integral_v<T>) {
    if (!value.is_number_integer()) {
      throw ParseError("field '" + name + "' must be an integer");
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!value.is_number()) throw ParseError("field '" + name + "' must be a number");
  }
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw ParseError("field '" + name + "': " + e.what());
  }
}

}  // namespace detail

inline json params_to_json(const CostParams& p) {
  return {{"price_rate", p.price_rate},
          {"running_cost", p.running_cost},
          {"maintenance", p.maintenance},
          {"detour_rate", p.detour_rate},
          {"capacity_units", p.capacity_units},
          {"passenger_units", p.passenger_units},
          {"parcel_units", p.parcel_units},
          {"vehicle_speed", p.vehicle_speed},
          {"scale_factor", p.scale_factor}};
}

inline CostParams params_from_json(const json& j) {
  using detail::field;
  CostParams p;
  p.price_rate = field<double>(j, "price_rate", "params");
  p.running_cost = field<double>(j, "running_cost", "params");
  p.maintenance = field<double>(j, "maintenance", "params");
  p.detour_rate = field<double>(j, "detour_rate", "params");
  p.capacity_units = field<int>(j, "capacity_units", "params");
  p.passenger_units = field<int>(j, "passenger_units", "params");
  p.parcel_units = field<int>(j, "parcel_units", "params");
  p.vehicle_speed = field<double>(j, "vehicle_speed", "params");
  p.scale_factor = field<double>(j, "scale_factor", "params");
  return p;
}

inline json instance_to_json(const Instance& inst) {
  json nodes = json::array();
  for (const Node& n : inst.nodes) {
    nodes.push_back({{"id", n.id},
                     {"kind", std::string(to_string(n.kind))},
                     {"x", n.location.x},
                     {"y", n.location.y},
                     {"requests", n.requests}});
  }
  return {{"name", inst.name},
          {"params", params_to_json(inst.params)},
          {"fleet",
           {{"integrated_size", inst.fleet.integrated_size},
            {"baseline_passenger_size", inst.fleet.baseline_passenger_size},
            {"baseline_delivery_size", inst.fleet.baseline_delivery_size}}},
          {"nodes", nodes}};
}

/// Parses and validates an instance document. Nodes may appear in any
/// order; they are stored sorted by id.
inline Instance instance_from_json(const json& j) {
  using detail::field;
  if (!j.is_object()) throw ParseError("instance document must be an object");
  Instance inst;
  inst.name = field<std::string>(j, "name", "");
  inst.params = params_from_json(field<json>(j, "params", ""));
  const json fleet = field<json>(j, "fleet", "");
  inst.fleet.integrated_size = field<int>(fleet, "integrated_size", "fleet");
  inst.fleet.baseline_passenger_size =
      field<int>(fleet, "baseline_passenger_size", "fleet");
  inst.fleet.baseline_delivery_size =
      field<int>(fleet, "baseline_delivery_size", "fleet");

  const json nodes = field<json>(j, "nodes", "");
  if (!nodes.is_array()) throw ParseError("field 'nodes' must be an array");
  std::set<NodeId> seen;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    Node n;
    n.id = field<int>(nodes[i], "id", where);
    n.kind = node_kind_from_string(field<std::string>(nodes[i], "kind", where));
    n.location.x = field<double>(nodes[i], "x", where);
    n.location.y = field<double>(nodes[i], "y", where);
    n.requests = field<int>(nodes[i], "requests", where);
    if (!seen.insert(n.id).second) {
      throw ValidationError("duplicate id " + std::to_string(n.id));
    }
    inst.nodes.push_back(n);
  }
  if (std::count_if(inst.nodes.begin(), inst.nodes.end(), [](const Node& n) {
        return n.kind == NodeKind::Hub;
      }) == 0) {
    throw ValidationError("no hub node");
  }
  std::sort(inst.nodes.begin(), inst.nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  inst.validate();
  return inst;
}

inline json plan_to_json(const RoutingPlan& plan) {
  json routes = json::array();
  for (const Route& r : plan.routes) {
    routes.push_back({{"vehicle_id", r.vehicle_id}, {"stops", r.stops}});
  }
  return routes;
}

inline RoutingPlan plan_from_json(const json& routes) {
  if (!routes.is_array()) throw ParseError("field 'routes' must be an array");
  RoutingPlan plan;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    const std::string where = "routes[" + std::to_string(i) + "]";
    Route r;
    r.vehicle_id = detail::field<int>(routes[i], "vehicle_id", where);
    r.stops = detail::field<std::vector<NodeId>>(routes[i], "stops", where);
    plan.routes.push_back(std::move(r));
  }
  return plan;
}

/// Plan file: {"instance": name, "routes": [{vehicle_id, stops}]}.
inline json plan_document(const RoutingPlan& plan, const std::string& instance_name) {
  return {{"instance", instance_name}, {"routes", plan_to_json(plan)}};
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

inline void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text(path, instance_to_json(inst).dump(2) + "\n");
}

inline Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(parse_json(read_text(path), path.string()));
}

/// Accepts either a plan file or a solve report carrying "best_plan".
inline RoutingPlan load_plan(const std::filesystem::path& path) {
  const json doc = parse_json(read_text(path), path.string());
  if (doc.is_object() && doc.contains("best_plan")) {
    return plan_from_json(detail::field<json>(doc, "best_plan", ""));
  }
  return plan_from_json(detail::field<json>(doc, "routes", ""));
}

inline void save_plan(const RoutingPlan& plan, const std::string& instance_name,
                      const std::filesystem::path& path) {
  write_text(path, plan_document(plan, instance_name).dump(2) + "\n");
}

}  // namespace lastmile
