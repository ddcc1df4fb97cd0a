#include "uwqkd/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

#include "uwqkd/analysis.hpp"
#include "uwqkd/errors.hpp"

namespace uwqkd::cli {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Runs task(i) for i in [0, n) on `jobs` threads. The first exception is rethrown.
template <typename Task>
void parallel_for(std::size_t n, unsigned jobs, Task&& task) {
  jobs = static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Cell {
  WaterKind water;
  int scenario;
  double beta;
};

std::vector<Cell> sorted_cells(const SweepSpec& spec) {
  std::vector<WaterKind> waters = spec.waters;
  std::vector<int> scenarios = spec.scenarios;
  std::vector<double> betas = spec.betas;
  std::sort(waters.begin(), waters.end());
  std::sort(scenarios.begin(), scenarios.end());
  std::sort(betas.begin(), betas.end());
  waters.erase(std::unique(waters.begin(), waters.end()), waters.end());
  scenarios.erase(std::unique(scenarios.begin(), scenarios.end()), scenarios.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
  std::vector<Cell> cells;
  for (WaterKind w : waters) {
    for (int s : scenarios) {
      for (double b : betas) cells.push_back({w, s, b});
    }
  }
  return cells;
}

SweepRow analytic_row(const RunConfig& cfg, const Cell& cell, double length) {
  const LinkConfig link = cell_link(cfg, cell.water, cell.scenario, length);
  const PerformanceResult r = evaluate_link(link, cell.beta);
  SweepRow row;
  row.water = cell.water;
  row.scenario = cell.scenario;
  row.beta = cell.beta;
  row.length = length;
  row.qber = r.qber;
  row.skr = r.skr;
  row.p_coincidence = r.p_coincidence;
  return row;
}

void add_monte_carlo(const RunConfig& cfg, SweepRow& row) {
  SimConfig sim;
  sim.n_packets = cfg.mc.packets;
  sim.photons_per_packet = cfg.mc.photons;
  sim.master_seed = cell_seed(cfg.mc.seed, row.water, row.scenario, row.beta, row.length);
  sim.link = cell_link(cfg, row.water, row.scenario, row.length);
  sim.beta = row.beta;
  sim.model = cfg.mc.model;
  const SimResult r = simulate(sim);
  row.mc_qber = r.qber_estimate;
  row.mc_stderr = r.std_error;
}

double qber_at(const LinkConfig& base, double source_fraction, double beta, double length) {
  return evaluate_link(base.with_length(length, source_fraction), beta).qber;
}

}  // namespace

unsigned resolve_jobs(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("QKD_SIM_JOBS"); env != nullptr && *env != '\0') {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("QKD_SIM_JOBS must be a positive integer, got '") + env + "'");
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

LinkConfig cell_link(const RunConfig& cfg, WaterKind water, int scenario, double length) {
  LinkConfig link = cfg.link;
  if (water != cfg.link.water.kind) link.water = WaterType::preset(water);
  if (scenario != cfg.link.scenario.id) link.scenario = AtmosphericScenario::preset(scenario);
  return link.with_length(length, cfg.source_fraction);
}

std::uint64_t cell_seed(std::uint64_t master, WaterKind water, int scenario, double beta, double length) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(water));
  h = splitmix64(h ^ static_cast<std::uint64_t>(scenario));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(beta));
  return splitmix64(h ^ std::bit_cast<std::uint64_t>(length));
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, unsigned jobs) {
  cfg.sweep.validate();
  const std::vector<double> lengths = cfg.sweep.lengths();
  const std::vector<Cell> cells = sorted_cells(cfg.sweep);
  std::vector<SweepRow> rows(cells.size() * lengths.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    rows[i] = analytic_row(cfg, cells[i / lengths.size()], lengths[i % lengths.size()]);
    if (cfg.mc.enabled) add_monte_carlo(cfg, rows[i]);
  });
  return rows;
}

std::vector<SweepRow> run_monte_carlo(const RunConfig& cfg, const std::vector<double>& lengths, unsigned jobs) {
  if (lengths.empty()) throw DomainError("no link lengths given");
  std::vector<double> sorted = lengths;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() < 0.0) throw DomainError("link length must be non-negative");
  const std::vector<Cell> cells = sorted_cells(cfg.sweep);
  std::vector<SweepRow> rows(cells.size() * sorted.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    rows[i] = analytic_row(cfg, cells[i / sorted.size()], sorted[i % sorted.size()]);
    add_monte_carlo(cfg, rows[i]);
  });
  return rows;
}

std::optional<double> solve_crossing(const LinkConfig& base, double source_fraction, double beta, double level,
                                     double l_min, double l_max) {
  if (!(l_min >= 0.0 && l_max > l_min)) throw DomainError("threshold search needs 0 <= l_min < l_max");
  constexpr int kGrid = 2000;
  double prev_l = l_min;
  double prev_q = qber_at(base, source_fraction, beta, l_min);
  if (prev_q >= level) return l_min;
  for (int i = 1; i <= kGrid; ++i) {
    const double l = l_min + (l_max - l_min) * i / kGrid;
    const double q = qber_at(base, source_fraction, beta, l);
    if (q < prev_q - 1e-12) {
      throw MonotonicityError("QBER decreases between L = " + std::to_string(prev_l) + " m and " +
                              std::to_string(l) + " m");
    }
    if (q >= level) {
      double lo = prev_l;
      double hi = l;
      while (hi - lo > kThresholdTolerance / 4.0) {
        const double mid = 0.5 * (lo + hi);
        (qber_at(base, source_fraction, beta, mid) >= level ? hi : lo) = mid;
      }
      return hi;
    }
    prev_l = l;
    prev_q = q;
  }
  return std::nullopt;
}

ThresholdReport solve_thresholds(const LinkConfig& base, double beta, double l_min, double l_max,
                                 double source_fraction) {
  ThresholdReport report;
  report.water = base.water.kind;
  report.scenario = base.scenario.id;
  report.beta = beta;
  report.qber_secure_distance = solve_crossing(base, source_fraction, beta, kQberSecurityLimit, l_min, l_max);
  report.skr_zero_distance =
      solve_crossing(base, source_fraction, beta, qber_root(base.code_rate), l_min, l_max);
  return report;
}

std::vector<ThresholdReport> run_thresholds(const RunConfig& cfg, double l_min, double l_max, unsigned jobs) {
  const std::vector<Cell> cells = sorted_cells(cfg.sweep);
  std::vector<ThresholdReport> reports(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    const LinkConfig base = cell_link(cfg, cells[i].water, cells[i].scenario, 0.0);
    reports[i] = solve_thresholds(base, cells[i].beta, l_min, l_max, cfg.source_fraction);
  });
  return reports;
}

}  // namespace uwqkd::cli
