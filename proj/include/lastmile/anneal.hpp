#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lastmile/cost.hpp"
#include "lastmile/model.hpp"
#include "lastmile/random.hpp"

namespace lastmile {

enum class MoveKind { Relocate, Swap, TwoOpt, Cross };

struct MoveWeights {
  double relocate = 1.0;
  double swap = 1.0;
  double two_opt = 1.0;
  double cross = 1.0;

  double total() const { return relocate + swap + two_opt + cross; }
};

struct SAConfig {
  std::size_t iterations_max = 200000;
  /// Unset means 10% of the initial solution's cost.
  std::optional<double> temp_max;
  double alpha = 0.999;
  std::uint64_t seed = 1;
  MoveWeights move_weights;
  /// Spacing of cost_trace samples and observer checkpoints.
  std::size_t trace_interval = 1000;

  void validate() const {
    if (iterations_max < 1) {
      throw std::invalid_argument("iterations_max must be at least 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (temp_max && !(*temp_max > 0.0 && std::isfinite(*temp_max))) {
      throw std::invalid_argument("temp_max must be positive");
    }
    const MoveWeights& w = move_weights;
    if (w.relocate < 0 || w.swap < 0 || w.two_opt < 0 || w.cross < 0 ||
        !(w.total() > 0.0)) {
      throw std::invalid_argument(
          "move weights must be nonnegative with at least one positive");
    }
    if (trace_interval < 1) {
      throw std::invalid_argument("trace_interval must be at least 1");
    }
  }
};

/// Geometric cooling: temp_max * alpha^i.
inline double calc_temperature(std::size_t iteration, double temp_max,
                               double alpha) {
  return temp_max * std::pow(alpha, static_cast<double>(iteration));
}

inline double calc_temperature(std::size_t iteration, const SAConfig& cfg) {
  if (!cfg.temp_max) {
    throw std::invalid_argument("temp_max is not resolved");
  }
  return calc_temperature(iteration, *cfg.temp_max, cfg.alpha);
}

/// Metropolis rule: improvements always pass, a worsening move of
/// `delta_cost` passes with probability exp(-delta_cost / temp).
inline bool metropolis_accept(double delta_cost, double temp, Rng& rng) {
  if (!(temp > 0.0)) throw std::domain_error("temperature must be positive");
  if (delta_cost <= 0.0) return true;
  return uniform01(rng) < std::exp(-delta_cost / temp);
}

/// Sweep construction: customers ordered by angle around the hub are
/// packed next-fit into vehicles, then each route is ordered by nearest
/// neighbour from the hub. The seed only breaks angular ties. When
/// next-fit strands capacity, first-fit-decreasing is used instead.
inline RoutingPlan create_initial_solution(const Instance& inst, int fleet_size,
                                           std::uint64_t seed) {
  const CostParams& params = inst.params;
  const int capacity = params.capacity_units;
  if (fleet_size < 0) throw std::invalid_argument("negative fleet size");
  if (inst.total_units() > fleet_size * capacity) {
    throw InfeasibleFleet("demand of " + std::to_string(inst.total_units()) +
                          " units exceeds fleet capacity of " +
                          std::to_string(fleet_size * capacity));
  }

  std::vector<NodeId> order;
  for (std::size_t i = 1; i < inst.nodes.size(); ++i) {
    order.push_back(static_cast<NodeId>(i));
  }
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[uniform_index(rng, i)]);
  }
  const Point hub = inst.hub().location;
  auto angle = [&](NodeId id) {
    const Point& p = inst.nodes[static_cast<std::size_t>(id)].location;
    return std::atan2(p.y - hub.y, p.x - hub.x);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return angle(a) < angle(b); });

  auto units = [&](NodeId id) {
    return params.units_for(inst.nodes[static_cast<std::size_t>(id)]);
  };

  std::vector<std::vector<NodeId>> groups(static_cast<std::size_t>(fleet_size));
  std::vector<int> loads(groups.size(), 0);
  bool packed = true;
  std::size_t vehicle = 0;
  for (NodeId id : order) {
    while (vehicle < groups.size() && loads[vehicle] + units(id) > capacity) {
      ++vehicle;
    }
    if (vehicle == groups.size()) {
      packed = false;
      break;
    }
    groups[vehicle].push_back(id);
    loads[vehicle] += units(id);
  }

  if (!packed) {
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return units(a) > units(b); });
    for (auto& g : groups) g.clear();
    std::fill(loads.begin(), loads.end(), 0);
    for (NodeId id : order) {
      auto slot = std::find_if(loads.begin(), loads.end(), [&](int load) {
        return load + units(id) <= capacity;
      });
      if (slot == loads.end()) {
        throw InfeasibleFleet("customers cannot be packed into " +
                              std::to_string(fleet_size) + " vehicles");
      }
      const auto v = static_cast<std::size_t>(slot - loads.begin());
      groups[v].push_back(id);
      loads[v] += units(id);
    }
  }

  RoutingPlan plan;
  for (std::size_t v = 0; v < groups.size(); ++v) {
    Route route{static_cast<int>(v), {}};
    std::vector<NodeId> pending = groups[v];
    NodeId at = kHubId;
    while (!pending.empty()) {
      auto next = std::min_element(
          pending.begin(), pending.end(), [&](NodeId a, NodeId b) {
            return inst.distance(at, a) < inst.distance(at, b);
          });
      at = *next;
      route.stops.push_back(at);
      pending.erase(next);
    }
    plan.routes.push_back(std::move(route));
  }
  return plan;
}

/// A single perturbation of a plan. Positions index into route stops:
///  - Relocate: stop (route_a, pos_a) is inserted into route_b at pos_b,
///    counted after its removal.
///  - Swap: stops (route_a, pos_a) and (route_b, pos_b) trade places.
///  - TwoOpt: route_a's segment [pos_a, pos_b] is reversed.
///  - Cross: the tails route_a[pos_a:] and route_b[pos_b:] are exchanged.
struct Move {
  MoveKind kind = MoveKind::Relocate;
  std::size_t route_a = 0;
  std::size_t pos_a = 0;
  std::size_t route_b = 0;
  std::size_t pos_b = 0;
};

namespace detail {

/// Rewritten stop lists of the routes a move touches.
struct Candidate {
  std::array<std::size_t, 2> route_index{};
  std::array<std::vector<NodeId>, 2> stops;
  std::size_t count = 0;
};

inline void build_candidate(const RoutingPlan& plan, const Move& move,
                            Candidate& out) {
  const auto& a = plan.routes.at(move.route_a).stops;
  const auto& b = plan.routes.at(move.route_b).stops;
  const bool same = move.route_a == move.route_b;
  out.route_index = {move.route_a, move.route_b};
  out.count = same ? 1 : 2;
  auto& first = out.stops[0];
  auto& second = out.stops[1];

  switch (move.kind) {
    case MoveKind::Relocate: {
      const NodeId moved = a.at(move.pos_a);
      first.assign(a.begin(), a.end());
      first.erase(first.begin() + static_cast<std::ptrdiff_t>(move.pos_a));
      if (!same) second.assign(b.begin(), b.end());
      auto& target = same ? first : second;
      if (move.pos_b > target.size()) throw std::out_of_range("relocate target");
      target.insert(target.begin() + static_cast<std::ptrdiff_t>(move.pos_b),
                    moved);
      break;
    }
    case MoveKind::Swap: {
      first.assign(a.begin(), a.end());
      if (same) {
        std::swap(first.at(move.pos_a), first.at(move.pos_b));
      } else {
        second.assign(b.begin(), b.end());
        std::swap(first.at(move.pos_a), second.at(move.pos_b));
      }
      break;
    }
    case MoveKind::TwoOpt: {
      if (!same || move.pos_a > move.pos_b || move.pos_b >= a.size()) {
        throw std::out_of_range("two-opt segment");
      }
      first.assign(a.begin(), a.end());
      std::reverse(first.begin() + static_cast<std::ptrdiff_t>(move.pos_a),
                   first.begin() + static_cast<std::ptrdiff_t>(move.pos_b) + 1);
      break;
    }
    case MoveKind::Cross: {
      if (same || move.pos_a > a.size() || move.pos_b > b.size()) {
        throw std::out_of_range("cross cut points");
      }
      const auto cut_a = a.begin() + static_cast<std::ptrdiff_t>(move.pos_a);
      const auto cut_b = b.begin() + static_cast<std::ptrdiff_t>(move.pos_b);
      first.assign(a.begin(), cut_a);
      first.insert(first.end(), cut_b, b.end());
      second.assign(b.begin(), cut_b);
      second.insert(second.end(), cut_a, a.end());
      break;
    }
  }
}

/// Draws capacity-feasible moves for one instance. Holds per-node unit
/// demands so load checks need no instance lookups.
class Neighborhood {
 public:
  static constexpr int kMaxAttempts = 50;

  Neighborhood(const Instance& inst, const MoveWeights& weights)
      : capacity_(inst.params.capacity_units), weights_(weights) {
    units_.reserve(inst.nodes.size());
    for (const Node& n : inst.nodes) units_.push_back(inst.params.units_for(n));
  }

  int load(std::span<const NodeId> stops) const {
    int total = 0;
    for (NodeId s : stops) total += units_[static_cast<std::size_t>(s)];
    return total;
  }

  /// Fills `out` with a feasible neighbour of `plan`. Returns false when
  /// no feasible move was found within kMaxAttempts draws.
  bool propose(const RoutingPlan& plan, Rng& rng, Candidate& out) const {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      std::optional<Move> move = draw(plan, rng);
      if (!move) continue;
      build_candidate(plan, *move, out);
      // Moves within one route never change its load.
      if (out.count == 1) return true;
      bool fits = true;
      for (std::size_t k = 0; k < out.count; ++k) {
        if (load(out.stops[k]) > capacity_) fits = false;
      }
      if (fits) return true;
    }
    return false;
  }

 private:
  MoveKind draw_kind(Rng& rng) const {
    const std::array<std::pair<MoveKind, double>, 4> table{{
        {MoveKind::Relocate, weights_.relocate},
        {MoveKind::Swap, weights_.swap},
        {MoveKind::TwoOpt, weights_.two_opt},
        {MoveKind::Cross, weights_.cross},
    }};
    double u = uniform01(rng) * weights_.total();
    MoveKind last = MoveKind::Relocate;
    for (const auto& [kind, weight] : table) {
      if (weight <= 0.0) continue;
      last = kind;
      if (u < weight) return kind;
      u -= weight;
    }
    return last;
  }

  static std::pair<std::size_t, std::size_t> locate(const RoutingPlan& plan,
                                                    std::size_t k) {
    for (std::size_t r = 0; r < plan.routes.size(); ++r) {
      const std::size_t len = plan.routes[r].stops.size();
      if (k < len) return {r, k};
      k -= len;
    }
    throw std::out_of_range("stop index");
  }

  std::optional<Move> draw(const RoutingPlan& plan, Rng& rng) const {
    const std::size_t n_routes = plan.routes.size();
    const std::size_t n_stops = plan.stop_count();
    Move move;
    move.kind = draw_kind(rng);
    switch (move.kind) {
      case MoveKind::Relocate: {
        if (n_stops == 0) return std::nullopt;
        std::tie(move.route_a, move.pos_a) =
            locate(plan, uniform_index(rng, n_stops));
        move.route_b = uniform_index(rng, n_routes);
        const std::size_t len = plan.routes[move.route_b].stops.size();
        const std::size_t slots = move.route_b == move.route_a ? len : len + 1;
        move.pos_b = uniform_index(rng, slots);
        return move;
      }
      case MoveKind::Swap: {
        if (n_stops < 2) return std::nullopt;
        const std::size_t i = uniform_index(rng, n_stops);
        std::size_t j = uniform_index(rng, n_stops - 1);
        if (j >= i) ++j;
        std::tie(move.route_a, move.pos_a) = locate(plan, i);
        std::tie(move.route_b, move.pos_b) = locate(plan, j);
        return move;
      }
      case MoveKind::TwoOpt: {
        std::vector<std::size_t> eligible;
        for (std::size_t r = 0; r < n_routes; ++r) {
          if (plan.routes[r].stops.size() >= 2) eligible.push_back(r);
        }
        if (eligible.empty()) return std::nullopt;
        move.route_a = move.route_b = eligible[uniform_index(rng, eligible.size())];
        const std::size_t len = plan.routes[move.route_a].stops.size();
        std::size_t i = uniform_index(rng, len);
        std::size_t j = uniform_index(rng, len - 1);
        if (j >= i) ++j;
        move.pos_a = std::min(i, j);
        move.pos_b = std::max(i, j);
        return move;
      }
      case MoveKind::Cross: {
        if (n_routes < 2 || n_stops == 0) return std::nullopt;
        move.route_a = uniform_index(rng, n_routes);
        move.route_b = uniform_index(rng, n_routes - 1);
        if (move.route_b >= move.route_a) ++move.route_b;
        move.pos_a = uniform_index(rng, plan.routes[move.route_a].stops.size() + 1);
        move.pos_b = uniform_index(rng, plan.routes[move.route_b].stops.size() + 1);
        return move;
      }
    }
    return std::nullopt;
  }

  int capacity_;
  MoveWeights weights_;
  std::vector<int> units_;
};

inline void commit(RoutingPlan& plan, Candidate& candidate) {
  for (std::size_t k = 0; k < candidate.count; ++k) {
    plan.routes[candidate.route_index[k]].stops.swap(candidate.stops[k]);
  }
}

}  // namespace detail

/// Applies `move` without any capacity check.
inline RoutingPlan apply_move(const RoutingPlan& plan, const Move& move) {
  detail::Candidate candidate;
  detail::build_candidate(plan, move, candidate);
  RoutingPlan out = plan;
  detail::commit(out, candidate);
  return out;
}

/// One weighted random move that keeps every route within capacity.
/// Returns `plan` unchanged when 50 draws all fail.
inline RoutingPlan propose_neighbor(const RoutingPlan& plan, const Instance& inst,
                                    Rng& rng, const MoveWeights& weights = {}) {
  const detail::Neighborhood neighborhood(inst, weights);
  detail::Candidate candidate;
  if (!neighborhood.propose(plan, rng, candidate)) return plan;
  RoutingPlan out = plan;
  detail::commit(out, candidate);
  return out;
}

struct TracePoint {
  std::size_t iteration = 0;
  double cost = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct SolveReport {
  RoutingPlan best_plan;
  CostBreakdown breakdown;
  double best_cost = 0.0;
  double best_profit = 0.0;
  double best_distance = 0.0;
  int fleet_size = 0;
  std::vector<TracePoint> cost_trace;
  std::size_t accepted_moves = 0;
  std::size_t iterations = 0;
  double temp_max = 0.0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
};

/// Called every trace_interval iterations with (iteration, current, best).
using SolveObserver =
    std::function<void(std::size_t, const RoutingPlan&, const RoutingPlan&)>;

/// Anneals from the sweep construction, minimizing total cost with every
/// customer served. Improving moves are always taken; worsening ones pass
/// the Metropolis test. The best plan is the cheapest one ever accepted.
inline SolveReport solve_sa(const Instance& inst, int fleet_size,
                            const SAConfig& cfg,
                            const SolveObserver& observer = {}) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  SolveReport report;
  report.seed = cfg.seed;
  report.fleet_size = fleet_size;

  RoutingPlan current = create_initial_solution(inst, fleet_size, cfg.seed);
  const double maintenance = inst.params.maintenance * inst.fleet.integrated_size;
  std::vector<double> route_costs;
  for (const Route& r : current.routes) route_costs.push_back(route_cost(r, inst));
  auto total_of = [&](const std::vector<double>& costs) {
    double sum = maintenance;
    for (double c : costs) sum += c;
    return sum;
  };

  double current_cost = total_of(route_costs);
  RoutingPlan best = current;
  double best_cost = current_cost;
  report.cost_trace.push_back({0, current_cost});

  double temp_max = cfg.temp_max.value_or(0.1 * current_cost);
  if (!(temp_max > 0.0)) temp_max = 1.0;
  report.temp_max = temp_max;
  if (!(calc_temperature(cfg.iterations_max - 1, temp_max, cfg.alpha) >=
        std::numeric_limits<double>::min())) {
    throw std::invalid_argument(
        "cooling schedule underflows before iterations_max; raise alpha");
  }

  if (current.stop_count() > 0) {
    const detail::Neighborhood neighborhood(inst, cfg.move_weights);
    Rng rng(cfg.seed);
    detail::Candidate candidate;
    std::vector<double> candidate_costs = route_costs;
    Route scratch;

    for (std::size_t i = 0; i < cfg.iterations_max; ++i) {
      const double temp = calc_temperature(i, temp_max, cfg.alpha);
      if (neighborhood.propose(current, rng, candidate)) {
        for (std::size_t k = 0; k < candidate.count; ++k) {
          scratch.stops.swap(candidate.stops[k]);
          candidate_costs[candidate.route_index[k]] = route_cost(scratch, inst);
          scratch.stops.swap(candidate.stops[k]);
        }
        const double candidate_cost = total_of(candidate_costs);
        if (metropolis_accept(candidate_cost - current_cost, temp, rng)) {
          detail::commit(current, candidate);
          for (std::size_t k = 0; k < candidate.count; ++k) {
            const std::size_t r = candidate.route_index[k];
            route_costs[r] = candidate_costs[r];
          }
          current_cost = candidate_cost;
          ++report.accepted_moves;
          if (current_cost < best_cost) {
            best = current;
            best_cost = current_cost;
          }
        } else {
          for (std::size_t k = 0; k < candidate.count; ++k) {
            const std::size_t r = candidate.route_index[k];
            candidate_costs[r] = route_costs[r];
          }
        }
      }
      report.iterations = i + 1;
      if (report.iterations % cfg.trace_interval == 0) {
        report.cost_trace.push_back({report.iterations, current_cost});
        if (observer) observer(report.iterations, current, best);
      }
    }
  }

  report.best_plan = std::move(best);
  report.breakdown = plan_cost_breakdown(report.best_plan, inst);
  report.best_cost = report.breakdown.total_cost;
  report.best_profit = report.breakdown.profit;
  report.best_distance = plan_distance(report.best_plan, inst);
  report.wall_time = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  return report;
}

}  // namespace lastmile
