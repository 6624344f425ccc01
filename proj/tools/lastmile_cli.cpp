// Command-line harness: instance generation, integrated and baseline
// solves, fleet comparisons, size sweeps and SVG route maps.

#include <atomic>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lastmile/lastmile.hpp"

namespace {

using namespace lastmile;

enum ExitCode { kOk = 0, kUsage = 1, kInfeasible = 2, kIo = 3 };

struct SolverFlags {
  std::uint64_t seed = 1;
  std::size_t iterations = SAConfig{}.iterations_max;
  std::optional<double> temp_max;
  double alpha = SAConfig{}.alpha;
  std::size_t trace_interval = SAConfig{}.trace_interval;

  SAConfig config() const {
    SAConfig cfg;
    cfg.seed = seed;
    cfg.iterations_max = iterations;
    cfg.temp_max = temp_max;
    cfg.alpha = alpha;
    cfg.trace_interval = trace_interval;
    cfg.validate();
    return cfg;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--iterations", f.iterations, "annealing iterations")
      ->capture_default_str();
  cmd->add_option("--temp-max", f.temp_max,
                  "initial temperature (default: 10% of initial cost)");
  cmd->add_option("--alpha", f.alpha, "geometric cooling ratio")->capture_default_str();
  cmd->add_option("--trace-interval", f.trace_interval, "cost trace sampling period")
      ->capture_default_str();
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

std::string table_line(const ComparisonRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %8d %10d %10d %9d %12s %12s %9s",
                row.instance_name.c_str(), row.n_vehicles, row.n_passengers,
                row.n_deliveries, row.n_customers,
                format_fixed2(row.baseline_cost).c_str(),
                format_fixed2(row.integrated_cost).c_str(),
                format_fixed2(row.reduction).c_str());
  return buf;
}

const char* kTableHeader =
    "instance         vehicles passengers deliveries customers     baseline   integrated reduction";

struct Comparison {
  ComparisonRow row;
  TimePenalty penalty;
};

Comparison compare_instance(const Instance& inst, const SAConfig& cfg) {
  const SolveReport integrated = solve_sa(inst, inst.fleet.integrated_size, cfg);
  const BaselineReport baseline = solve_baseline(inst, cfg);
  return {make_comparison_row(inst, baseline, integrated),
          time_penalty(integrated, baseline, inst.params)};
}

int run_gen(int customers, const GenConfig& base, const CostParams& params,
            const std::string& out) {
  GenConfig cfg = base;
  cfg.n_customers = customers;
  const Instance inst = generate_instance(cfg, params);
  emit(out, instance_to_json(inst).dump(2) + "\n");
  std::cerr << inst.name << ": " << inst.count_passengers() << " passengers, "
            << inst.count_parcels() << " parcels, fleet "
            << inst.fleet.integrated_size << " integrated / "
            << inst.fleet.baseline_passenger_size << "+"
            << inst.fleet.baseline_delivery_size << " baseline\n";
  return kOk;
}

int run_solve(const std::string& instance_path, const std::string& mode,
              const SolverFlags& flags, const std::string& format,
              const std::string& out, const std::string& plan_out) {
  const Instance inst = load_instance(instance_path);
  const SAConfig cfg = flags.config();
  if (mode == "integrated") {
    const SolveReport report = solve_sa(inst, inst.fleet.integrated_size, cfg);
    if (format == "csv") {
      emit(out, "mode,seed,fleet,total_cost,profit,distance\nintegrated," +
                    std::to_string(report.seed) + "," +
                    std::to_string(report.fleet_size) + "," +
                    format_full(report.best_cost) + "," +
                    format_full(report.best_profit) + "," +
                    format_full(report.best_distance) + "\n");
    } else {
      emit(out, report_to_json(report).dump(2) + "\n");
    }
    if (!plan_out.empty()) save_plan(report.best_plan, inst.name, plan_out);
    std::cerr << "integrated cost " << format_fixed2(report.best_cost) << ", profit "
              << format_fixed2(report.best_profit) << " (" << report.wall_time
              << " s)\n";
    return kOk;
  }
  const BaselineReport report = solve_baseline(inst, cfg);
  if (format == "csv") {
    emit(out, "mode,seed,passenger_cost,delivery_cost,combined_cost,combined_profit\n"
              "baseline," + std::to_string(cfg.seed) + "," +
                  format_full(report.passenger_report.best_cost) + "," +
                  format_full(report.delivery_report.best_cost) + "," +
                  format_full(report.combined_cost) + "," +
                  format_full(report.combined_profit) + "\n");
  } else {
    emit(out, report_to_json(report).dump(2) + "\n");
  }
  std::cerr << "baseline cost " << format_fixed2(report.combined_cost) << " (passenger "
            << format_fixed2(report.passenger_report.best_cost) << ", delivery "
            << format_fixed2(report.delivery_report.best_cost) << ")\n";
  return kOk;
}

int run_compare(const std::string& instance_path, const SolverFlags& flags,
                const std::string& format, const std::string& out) {
  const Instance inst = load_instance(instance_path);
  const Comparison c = compare_instance(inst, flags.config());
  std::cerr << kTableHeader << '\n' << table_line(c.row) << '\n'
            << "time penalty (min): total " << format_fixed2(c.penalty.total_original)
            << " / scaled " << format_fixed2(c.penalty.total_scaled) << ", average "
            << format_fixed2(c.penalty.average_original) << " / scaled "
            << format_fixed2(c.penalty.average_scaled) << '\n';
  if (format == "json") {
    json doc = row_to_json(c.row);
    doc["time_penalty"] = penalty_to_json(c.penalty);
    emit(out, doc.dump(2) + "\n");
  } else {
    emit(out, std::string(kCsvHeader) + "\n" + to_csv(c.row) + "\n");
  }
  return kOk;
}

int run_sweep(const std::vector<int>& sizes, const std::vector<std::uint64_t>& seeds,
              const SolverFlags& flags, const GenConfig& gen, const CostParams& params,
              unsigned jobs, const std::string& format, const std::string& out) {
  if (sizes.empty() || seeds.empty()) {
    throw std::invalid_argument("sweep needs at least one size and one seed");
  }
  struct Task {
    int size;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int size : sizes) {
    for (std::uint64_t seed : seeds) tasks.push_back({size, seed});
  }
  for (const Task& t : tasks) {
    GenConfig probe = gen;
    probe.n_customers = t.size;
    probe.validate();
  }
  flags.config();

  std::vector<std::optional<Comparison>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        GenConfig cfg = gen;
        cfg.n_customers = tasks[i].size;
        cfg.seed = tasks[i].seed;
        SolverFlags f = flags;
        f.seed = tasks[i].seed;
        results[i] = compare_instance(generate_instance(cfg, params), f.config());
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::max(1U, jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::cerr << kTableHeader << '\n';
  std::string text;
  json doc = json::array();
  if (format != "json") text = std::string(kCsvHeader) + "\n";
  for (const auto& r : results) {
    std::cerr << table_line(r->row) << '\n';
    if (format == "json") {
      doc.push_back(row_to_json(r->row));
    } else {
      text += to_csv(r->row) + "\n";
    }
  }
  emit(out, format == "json" ? doc.dump(2) + "\n" : text);
  return kOk;
}

int run_render(const std::string& instance_path, const std::string& plan_path,
               const std::string& out) {
  const Instance inst = load_instance(instance_path);
  const RoutingPlan plan = load_plan(plan_path);
  const auto violations = validate_plan(plan, inst, false);
  for (const Violation& v : violations) {
    if (v.kind == ViolationKind::UnknownNode) {
      throw ValidationError("plan references unknown node " +
                            std::to_string(v.node_id.value_or(-1)));
    }
  }
  const std::string svg = svg_document(plan, inst);
  emit(out, svg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrated passenger and parcel fleet routing"};
  app.require_subcommand(1);

  std::string out;
  std::string format;
  SolverFlags flags;
  GenConfig gen;
  CostParams params;

  auto add_param_flags = [&](CLI::App* cmd) {
    cmd->add_option("--fraction", gen.passenger_fraction, "passenger share of customers")
        ->capture_default_str();
    cmd->add_option("--side", gen.region_side, "square region side in meters")
        ->capture_default_str();
    cmd->add_flag("!--hub-random", gen.hub_at_center, "place the hub uniformly at random");
    cmd->add_option("--price-rate", params.price_rate, "passenger fare per meter")
        ->capture_default_str();
    cmd->add_option("--running-cost", params.running_cost, "running cost per meter")
        ->capture_default_str();
    cmd->add_option("--maintenance", params.maintenance, "cost per vehicle per day")
        ->capture_default_str();
    cmd->add_option("--detour-rate", params.detour_rate, "detour surcharge per meter")
        ->capture_default_str();
  };
  auto add_format = [&](CLI::App* cmd, const char* def) {
    cmd->add_option("--format", format, std::string("output format (default ") + def + ")")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "output path (default stdout)");
  };

  int customers = 0;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--customers", customers, "number of customer locations")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--out", out, "output path (default stdout)");
  add_param_flags(gen_cmd);

  std::string instance_path;
  std::string mode = "integrated";
  std::string plan_out;
  auto* solve_cmd = app.add_subcommand("solve", "anneal one service model");
  solve_cmd->add_option("instance", instance_path, "instance file")->required();
  solve_cmd->add_option("--mode", mode, "integrated or baseline")
      ->check(CLI::IsMember({"integrated", "baseline"}))
      ->capture_default_str();
  solve_cmd->add_option("--plan-out", plan_out, "also write the best plan file");
  add_solver_flags(solve_cmd, flags);
  add_format(solve_cmd, "json");

  auto* compare_cmd = app.add_subcommand("compare", "baseline versus integrated fleet");
  compare_cmd->add_option("instance", instance_path, "instance file")->required();
  add_solver_flags(compare_cmd, flags);
  add_format(compare_cmd, "csv");

  std::vector<int> sizes{8, 10, 14, 20, 25, 30, 40, 50, 60, 70};
  std::vector<std::uint64_t> seeds{1};
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  auto* sweep_cmd = app.add_subcommand("sweep", "compare over generated instance sizes");
  sweep_cmd->add_option("--sizes", sizes, "customer counts")->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--seeds", seeds, "instance and solver seeds")->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", jobs, "parallel workers");
  add_solver_flags(sweep_cmd, flags);
  add_param_flags(sweep_cmd);
  add_format(sweep_cmd, "csv");

  std::string plan_path;
  auto* render_cmd = app.add_subcommand("render", "draw a plan as SVG");
  render_cmd->add_option("instance", instance_path, "instance file")->required();
  render_cmd->add_option("plan", plan_path, "plan file or solve report")->required();
  render_cmd->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  auto format_or = [&](const char* def) { return format.empty() ? std::string(def) : format; };

  try {
    if (*gen_cmd || *sweep_cmd) {
      try {
        params.validate();
      } catch (const ValidationError& e) {
        throw std::invalid_argument(e.what());
      }
    }
    if (*gen_cmd) return run_gen(customers, gen, params, out);
    if (*solve_cmd) return run_solve(instance_path, mode, flags, format_or("json"), out, plan_out);
    if (*compare_cmd) return run_compare(instance_path, flags, format_or("csv"), out);
    if (*sweep_cmd) {
      return run_sweep(sizes, seeds, flags, gen, params, jobs, format_or("csv"), out);
    }
    if (*render_cmd) return run_render(instance_path, plan_path, out);
  } catch (const InfeasibleFleet& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kIo;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
