// Acceptance checks, one PASS/FAIL line per criterion. `acceptance N` runs
// criterion N and exits nonzero if it fails; no argument runs all of them.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "lastmile/lastmile.hpp"

namespace {

using namespace lastmile;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Instance generated(int customers, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n_customers = customers;
  cfg.seed = seed;
  return generate_instance(cfg);
}

template <typename F>
void parallel_for(std::size_t n, F body) {
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Published (baseline, integrated, reduction) rows of the comparison table.
struct Row {
  double baseline, integrated, reduction;
};
const Row kRows[] = {
    {461.68, 246.77, 46.55}, {425.65, 231.11, 45.71}, {656.31, 290.36, 55.76},
    {500.87, 303.15, 39.48}, {592.08, 326.07, 44.93}, {624.03, 363.01, 41.83},
    {692.06, 466.04, 32.66}, {738.08, 501.74, 32.02}, {743.07, 521.61, 29.80},
    {802.73, 544.70, 32.14},
};

Outcome reduction_column() {
  int ok = 0;
  std::string misses;
  for (const Row& r : kRows) {
    const double got = reduction_percent(r.baseline, r.integrated);
    if (std::abs(got - r.reduction) <= 0.005) {
      ++ok;
    } else {
      misses += " " + fmt("%.2f", r.baseline) + "/" + fmt("%.2f", r.integrated) + " -> " +
                fmt("%.4f", got) + " vs " + fmt("%.2f", r.reduction) + ";";
    }
  }
  return {ok == 10, std::to_string(ok) + "/10 rows within 0.005" +
                        (misses.empty() ? "" : " (miss:" + misses + ")")};
}

Outcome baseline_sum() {
  SolveReport p;
  p.best_cost = 270.22;
  SolveReport d;
  d.best_cost = 386.09;
  const double sum = combine_baseline(p, d).combined_cost;
  return {sum == 656.31, "270.22 + 386.09 = " + format_full(sum)};
}

Outcome penalty_arithmetic() {
  const TimePenalty a = time_penalty_from_total(8.96 / 25.0, 3, 25.0);
  const TimePenalty b = time_penalty_from_total(9.21 / 25.0, 4, 25.0);
  const double a_avg = 8.96 / 3.0;
  const double b_avg = 9.21 / 4.0;
  const bool averages = std::abs(a_avg - 2.99) <= 0.005 && std::abs(b_avg - 2.30) <= 0.005 &&
                        std::abs(a.average_scaled - 2.99) <= 0.005 &&
                        std::abs(b.average_scaled - 2.30) <= 0.005;
  const TimePenalty c = time_penalty_from_total(0.3584, 3, 25.0);
  const bool scaled = c.total_scaled == 0.3584 * 25.0 && c.average_scaled == c.total_scaled / 3;
  return {averages && scaled, "8.96/3 = " + fmt("%.4f", a.average_scaled) +
                                  ", 9.21/4 = " + fmt("%.4f", b.average_scaled) +
                                  ", 0.3584*25 = " + format_full(c.total_scaled)};
}

Outcome oracle_equivalence() {
  constexpr int kRuns = 100;
  std::vector<int> hit(kRuns, 0);
  std::vector<double> secs(kRuns, 0.0);
  std::vector<int> fleet(kRuns, 0);
  parallel_for(kRuns, [&](std::size_t i) {
    const Instance inst = generated(1 + static_cast<int>(i % 7), 1000 + i);
    fleet[i] = inst.fleet.integrated_size;
    const double optimum = exact_solve(inst, inst.fleet.integrated_size).best_cost;
    SAConfig cfg;
    cfg.seed = i + 1;
    const auto t0 = Clock::now();
    const SolveReport r = solve_sa(inst, inst.fleet.integrated_size, cfg);
    secs[i] = seconds_since(t0);
    hit[i] = std::abs(r.best_cost - optimum) <= 1e-9 * std::max(1.0, std::abs(optimum));
  });
  const int hits = std::accumulate(hit.begin(), hit.end(), 0);
  const double slowest = *std::max_element(secs.begin(), secs.end());
  const int max_fleet = *std::max_element(fleet.begin(), fleet.end());
  return {hits >= 95 && slowest < 10.0 && max_fleet <= 3,
          std::to_string(hits) + "/100 optimal, slowest run " + fmt("%.3f", slowest) +
              " s, max fleet " + std::to_string(max_fleet)};
}

Outcome metropolis_rates() {
  bool ok = true;
  std::string detail;
  for (double ratio : {0.1, std::log(2.0), 3.0}) {
    Rng rng(2024);
    const int draws = 100000;
    int accepted = 0;
    for (int i = 0; i < draws; ++i) accepted += metropolis_accept(ratio, 1.0, rng);
    const double rate = static_cast<double>(accepted) / draws;
    ok = ok && std::abs(rate - std::exp(-ratio)) <= 0.01;
    detail += fmt("ratio %.4f: ", ratio) + fmt("%.4f", rate) + fmt(" vs %.4f; ", std::exp(-ratio));
  }
  return {ok, detail};
}

Outcome qualitative_comparison() {
  const int sizes[] = {8, 10, 14, 20, 25, 30, 40, 50, 60, 70};
  struct Task {
    int size;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int s : sizes) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) tasks.push_back({s, seed});
  }
  std::vector<double> reduction(tasks.size(), 0.0);
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Instance inst = generated(tasks[i].size, tasks[i].seed);
    SAConfig cfg;
    cfg.seed = tasks[i].seed;
    const double integrated = solve_sa(inst, inst.fleet.integrated_size, cfg).best_cost;
    const double baseline = solve_baseline(inst, cfg).combined_cost;
    reduction[i] = reduction_percent(baseline, integrated);
  });
  std::vector<double> sorted = reduction;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  const auto wins = std::count_if(reduction.begin(), reduction.end(),
                                  [](double r) { return r >= 0.0; });
  const auto in_band = std::count_if(reduction.begin(), reduction.end(),
                                     [](double r) { return r >= 29.80 && r <= 55.76; });
  std::string per_size;
  for (std::size_t k = 0; k < std::size(sizes); ++k) {
    double mean = 0.0;
    for (std::size_t j = 0; j < 5; ++j) mean += reduction[k * 5 + j] / 5.0;
    per_size += " " + std::to_string(sizes[k]) + ":" + fmt("%.2f", mean);
  }
  return {wins >= 45 && median > 0.0,
          std::to_string(wins) + "/50 integrated <= baseline, median reduction " +
              fmt("%.2f", median) + "%, range [" + fmt("%.2f", sorted.front()) + ", " +
              fmt("%.2f", sorted.back()) + "], " + std::to_string(in_band) +
              "/50 inside 29.80-55.76; mean by size" + per_size};
}

Outcome feasibility_suite() {
  const Instance inst = [] {
    Instance x;
    x.name = "injected";
    x.nodes = {{0, NodeKind::Hub, {0, 0}, 1},
               {1, NodeKind::PassengerFromHub, {10, 0}, 1},
               {2, NodeKind::PassengerToHub, {0, 10}, 1},
               {3, NodeKind::PassengerFromHub, {-10, 0}, 1},
               {4, NodeKind::Parcel, {0, -10}, 1}};
    x.fleet = derive_fleet_sizes(3, 1, x.params);
    return x;
  }();
  auto flags = [&](const RoutingPlan& plan, ViolationKind kind) {
    const auto v = validate_plan(plan, inst);
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
  };
  int flagged = 0;
  flagged += flags({{{0, {1, 2, 3}}, {1, {4}}}}, ViolationKind::CapacityExceeded);
  flagged += flags({{{0, {1, 2}}, {1, {3, 4, 2}}}}, ViolationKind::CustomerDuplicated);
  flagged += flags({{{0, {1, 2}}, {1, {3}}}}, ViolationKind::CustomerUnserved);
  flagged += flags({{{0, {1, 2}}, {1, {3, 4, 17}}}}, ViolationKind::UnknownNode);
  flagged += flags({{{0, {1, 2}}, {1, {3, 4, 3}}}}, ViolationKind::DemandOversatisfied);
  const bool clean_reference = validate_plan({{{0, {1, 2}}, {1, {3, 4}}}}, inst).empty();

  constexpr int kRuns = 100;
  std::vector<int> clean(kRuns, 0);
  parallel_for(kRuns, [&](std::size_t i) {
    const std::uint64_t seed = 500 + i;
    const Instance small = generated(1 + static_cast<int>(i % 8), seed);
    const Instance large = generated(8 + static_cast<int>(i % 63), seed);
    SAConfig cfg;
    cfg.seed = seed;
    cfg.iterations_max = 20000;
    bool ok = validate_plan(solve_sa(large, large.fleet.integrated_size, cfg).best_plan, large)
                  .empty();
    ok = ok && validate_plan(exact_solve(small, small.fleet.integrated_size).best_plan, small)
                   .empty();
    const BaselineReport b = solve_baseline(large, cfg);
    const SplitInstance split = split_instance(large);
    ok = ok && validate_plan(b.passenger_report.best_plan, split.passenger.instance).empty();
    ok = ok && validate_plan(b.delivery_report.best_plan, split.parcel.instance).empty();
    clean[i] = ok;
  });
  const int clean_runs = std::accumulate(clean.begin(), clean.end(), 0);
  return {flagged == 5 && clean_reference && clean_runs == kRuns,
          std::to_string(flagged) + "/5 injected violations flagged, " +
              std::to_string(clean_runs) + "/100 solver and oracle runs clean"};
}

Outcome determinism() {
  const Instance inst = generated(25, 9);
  SAConfig cfg;
  cfg.seed = 77;
  cfg.iterations_max = 50000;
  auto once = [&] {
    const SolveReport integrated = solve_sa(inst, inst.fleet.integrated_size, cfg);
    const BaselineReport baseline = solve_baseline(inst, cfg);
    return report_to_json(integrated).dump(2) + report_to_json(baseline).dump(2) +
           to_csv(make_comparison_row(inst, baseline, integrated));
  };
  const std::string a = once();
  const std::string b = once();
  const bool instances_match =
      instance_to_json(generated(25, 9)).dump() == instance_to_json(inst).dump();
  return {a == b && instances_match,
          std::string(a == b ? "identical" : "different") + " reports and CSV (" +
              std::to_string(a.size()) + " bytes)"};
}

Outcome desk_runtime() {
  const Instance inst = generated(70, 1);
  SAConfig cfg;
  const auto t0 = Clock::now();
  const SolveReport r = solve_sa(inst, inst.fleet.integrated_size, cfg);
  const double secs = seconds_since(t0);
  return {inst.fleet.integrated_size == 24 && r.iterations == 200000 && secs < 60.0,
          std::to_string(inst.customer_count()) + " customers, " +
              std::to_string(inst.fleet.integrated_size) + " vehicles, " +
              std::to_string(r.iterations) + " iterations in " + fmt("%.2f", secs) + " s"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"reduction column", reduction_column},
      {"baseline summation", baseline_sum},
      {"time penalty arithmetic", penalty_arithmetic},
      {"oracle equivalence", oracle_equivalence},
      {"metropolis statistics", metropolis_rates},
      {"integrated vs baseline", qualitative_comparison},
      {"feasibility suite", feasibility_suite},
      {"determinism", determinism},
      {"desk-scale runtime", desk_runtime},
  };
  std::size_t first = 0;
  std::size_t last = criteria.size();
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
    first = static_cast<std::size_t>(k - 1);
    last = first + 1;
  }
  bool all = true;
  for (std::size_t i = first; i < last; ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, o.detail.c_str(), seconds_since(t0));
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
