// qkd_sim: BBM92 over underwater optical links.
//
//   qkd_sim presets
//   qkd_sim sweep      [--config f] [--water w,..] [--scenario s,..] [--beta b,..] [--mc] [--out f]
//   qkd_sim thresholds [--config f] [--water w,..] [--scenario s,..] [--beta b,..] [--out f]
//   qkd_sim mc         [--config f] --length L,.. [--packets n] [--photons n] [--seed s] [--out f]
//
// Exit codes: 0 success, 2 usage error, 3 config error, 4 insufficient statistics
// (including operating points with zero coincidence probability).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uwqkd/cli/config.hpp"
#include "uwqkd/cli/csv.hpp"
#include "uwqkd/cli/sweep.hpp"
#include "uwqkd/errors.hpp"

namespace {

using namespace uwqkd;
using namespace uwqkd::cli;

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitStatistics = 4;

struct Options {
  std::string config_path;
  std::vector<std::string> waters;
  std::vector<std::string> scenarios;
  std::vector<std::string> betas;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> packets;
  std::optional<std::size_t> photons;
  int jobs = 0;
  bool mc = false;
  std::string model;
  std::optional<double> l_min;
  std::optional<double> l_max;
  std::optional<double> step;
  std::vector<double> lengths;
  bool t_corr = false;
};

// Usage errors found after CLI11 parsing (bad names, empty ranges).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_selection(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "Configuration file");
  cmd->add_option("--water", o.waters, "Water types: clear, coastal, turbid")->delimiter(',');
  cmd->add_option("--scenario", o.scenarios, "Atmospheric scenarios: s1..s5")->delimiter(',');
  cmd->add_option("--beta", o.betas, "Entanglement angles in rad, e.g. pi/4,pi/5")->delimiter(',');
  cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
  cmd->add_option("--jobs", o.jobs, "Worker threads (default: QKD_SIM_JOBS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--t-corr", o.t_corr, "Scale arm efficiencies by the correction coefficient");
}

void add_monte_carlo(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--packets", o.packets, "Photon packets per cell")->check(CLI::PositiveNumber);
  cmd->add_option("--photons", o.photons, "Photons per packet")->check(CLI::PositiveNumber);
  cmd->add_option("--model", o.model, "Event model: mechanisms (default) or born");
}

RunConfig build_config(const Options& o) {
  RunConfig cfg = o.config_path.empty() ? default_config() : load_config(o.config_path);
  if (!o.waters.empty()) {
    cfg.sweep.waters.clear();
    for (const std::string& w : o.waters) {
      const auto kind = parse_water(w);
      if (!kind) throw UsageError("unknown water type '" + w + "'");
      cfg.sweep.waters.push_back(*kind);
    }
  }
  if (!o.scenarios.empty()) {
    cfg.sweep.scenarios.clear();
    for (const std::string& s : o.scenarios) {
      const auto id = parse_scenario(s);
      if (!id) throw UsageError("unknown scenario '" + s + "'");
      cfg.sweep.scenarios.push_back(*id);
    }
  }
  if (!o.betas.empty()) {
    cfg.sweep.betas.clear();
    for (const std::string& b : o.betas) {
      double beta = 0.0;
      try {
        beta = parse_angle(b);
      } catch (const ConfigError& e) {
        throw UsageError(std::string("--beta: ") + e.what());
      }
      if (!(beta >= 0.0 && beta <= std::numbers::pi / 4.0 + 1e-15)) {
        throw UsageError("--beta must lie in [0, pi/4], got '" + b + "'");
      }
      cfg.sweep.betas.push_back(std::min(beta, std::numbers::pi / 4.0));
    }
  }
  if (o.l_min) cfg.sweep.l_min = *o.l_min;
  if (o.l_max) cfg.sweep.l_max = *o.l_max;
  if (o.step) cfg.sweep.step = *o.step;
  if (o.seed) cfg.mc.seed = *o.seed;
  if (o.packets) cfg.mc.packets = *o.packets;
  if (o.photons) cfg.mc.photons = *o.photons;
  if (!o.model.empty()) {
    try {
      cfg.mc.model = parse_event_model(o.model);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--model: ") + e.what());
    }
  }
  if (o.mc) cfg.mc.enabled = true;
  if (o.t_corr) cfg.link.detector.apply_t_corr = true;
  return cfg;
}

template <typename Writer>
void emit(const Options& o, Writer&& write) {
  if (o.out.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + o.out + "'");
  write(file);
  if (!file) throw ConfigError("failed writing '" + o.out + "'");
}

void print_presets(std::ostream& out) {
  out << "water,alpha_per_m,gamma_dep_per_m\n";
  for (WaterKind k : kAllWaters) {
    const WaterType w = WaterType::preset(k);
    out << to_string(k) << ',' << format_double(w.alpha) << ',' << format_double(w.gamma_dep) << '\n';
  }
  out << "\nscenario,r0_w_per_m2\n";
  for (int id : kAllScenarios) {
    out << 's' << id << ',' << format_double(AtmosphericScenario::preset(id).r0) << '\n';
  }
  const DetectorParams d;
  const LinkConfig link;
  out << "\nparameter,value\n"
      << "eta_alice," << format_double(d.eta_alice) << '\n'
      << "eta_bob," << format_double(d.eta_bob) << '\n'
      << "dark_current_hz," << format_double(d.i_dc) << '\n'
      << "pulse_duration_s," << format_double(d.dt_pulse) << '\n'
      << "gate_time_s," << format_double(d.dt_gate) << '\n'
      << "lens_diameter_m," << format_double(d.lens_d) << '\n'
      << "filter_bandwidth_m," << format_double(d.d_lambda) << '\n'
      << "fov_rad," << format_double(d.fov_delta) << '\n'
      << "e_det," << format_double(d.e_det) << '\n'
      << "t_corr," << format_double(d.t_corr) << '\n'
      << "wavelength_m," << format_double(link.wavelength) << '\n'
      << "depth_m," << format_double(link.depth_z) << '\n'
      << "k_inf_per_m," << format_double(link.k_inf) << '\n'
      << "code_rate," << format_double(link.code_rate) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BBM92 entanglement-based QKD over underwater optical channels"};
  app.require_subcommand(1);
  Options o;

  CLI::App* presets = app.add_subcommand("presets", "Print water, scenario and detector presets");

  CLI::App* sweep = app.add_subcommand("sweep", "QBER and SKR versus link length");
  add_selection(sweep, o);
  add_monte_carlo(sweep, o);
  sweep->add_flag("--mc", o.mc, "Add Monte Carlo estimates to every row");
  sweep->add_option("--l-min", o.l_min, "Shortest link length, m");
  sweep->add_option("--l-max", o.l_max, "Longest link length, m");
  sweep->add_option("--step", o.step, "Length step, m");

  CLI::App* thresholds = app.add_subcommand("thresholds", "Secure distance and SKR-zero distance");
  add_selection(thresholds, o);
  thresholds->add_option("--l-min", o.l_min, "Search range start, m (default 0)");
  thresholds->add_option("--l-max", o.l_max, "Search range end, m (default 20)");

  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo QBER at given link lengths");
  add_selection(mc, o);
  add_monte_carlo(mc, o);
  mc->add_option("--length", o.lengths, "Link lengths, m")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (presets->parsed()) {
      emit(o, print_presets);
      return 0;
    }
    RunConfig cfg = build_config(o);
    const unsigned jobs = resolve_jobs(o.jobs);
    if (sweep->parsed()) {
      const auto rows = run_sweep(cfg, jobs);
      emit(o, [&](std::ostream& out) { write_sweep_csv(out, rows); });
    } else if (thresholds->parsed()) {
      const double l_min = o.l_min.value_or(0.0);
      const double l_max = o.l_max.value_or(20.0);
      const auto reports = run_thresholds(cfg, l_min, l_max, jobs);
      emit(o, [&](std::ostream& out) { write_threshold_csv(out, reports); });
    } else if (mc->parsed()) {
      const auto rows = run_monte_carlo(cfg, o.lengths, jobs);
      emit(o, [&](std::ostream& out) { write_sweep_csv(out, rows); });
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InsufficientStatistics& e) {
    std::cerr << "insufficient statistics: " << e.what() << '\n';
    return kExitStatistics;
  } catch (const UndefinedOperatingPoint& e) {
    // No coincidences at all: no statistic can be formed.
    std::cerr << "insufficient statistics: " << e.what() << '\n';
    return kExitStatistics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
