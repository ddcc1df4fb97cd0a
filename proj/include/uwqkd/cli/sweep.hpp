#pragma once

// Distance sweeps and secure-distance solvers behind the command-line driver.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uwqkd/cli/config.hpp"

namespace uwqkd::cli {

struct SweepRow {
  WaterKind water = WaterKind::Clear;
  int scenario = 1;
  double beta = 0.0;
  double length = 0.0;
  double qber = 0.0;
  double skr = 0.0;
  double p_coincidence = 0.0;
  std::optional<double> mc_qber;
  std::optional<double> mc_stderr;
};

// Worker count: explicit value if positive, else QKD_SIM_JOBS, else hardware concurrency.
unsigned resolve_jobs(int requested);

// Link for one sweep cell: the configured link with the preset water and
// scenario swapped in and the source at source_fraction * length.
LinkConfig cell_link(const RunConfig& cfg, WaterKind water, int scenario, double length);

// Seed of the Monte Carlo run for one cell, a function of the master seed and
// the cell coordinates only.
std::uint64_t cell_seed(std::uint64_t master, WaterKind water, int scenario, double beta, double length);

// One row per (water, scenario, beta, L), sorted by that key. MC columns are
// filled when cfg.mc.enabled.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, unsigned jobs);

// Monte Carlo at explicit cells, same row layout as run_sweep.
std::vector<SweepRow> run_monte_carlo(const RunConfig& cfg, const std::vector<double>& lengths, unsigned jobs);

class MonotonicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThresholdReport {
  WaterKind water = WaterKind::Clear;
  int scenario = 1;
  double beta = 0.0;
  // nullopt: the crossing lies beyond l_max.
  std::optional<double> qber_secure_distance;
  std::optional<double> skr_zero_distance;
};

inline constexpr double kQberSecurityLimit = 0.11;
inline constexpr double kThresholdTolerance = 1e-4;  // m

// Smallest L in [l_min, l_max] with QBER(L) >= level, to kThresholdTolerance.
// Returns l_min when QBER(l_min) already reaches the level and nullopt when
// QBER(l_max) stays below it. A grid pre-pass checks that QBER is
// non-decreasing and throws MonotonicityError otherwise.
std::optional<double> solve_crossing(const LinkConfig& base, double source_fraction, double beta, double level,
                                     double l_min, double l_max);

// QBER = 0.11 crossing and first zero of the SKR (QBER = qber_root(R_c)).
ThresholdReport solve_thresholds(const LinkConfig& base, double beta, double l_min = 0.0, double l_max = 20.0,
                                 double source_fraction = 0.2);

// Thresholds for every (water, scenario, beta) cell of cfg.sweep, sorted by that key.
std::vector<ThresholdReport> run_thresholds(const RunConfig& cfg, double l_min, double l_max, unsigned jobs);

}  // namespace uwqkd::cli
