#pragma once

// INI-style run configuration with explicit units.
//
//   [link]        length, source_fraction, depth, wavelength, k_inf, code_rate
//   [detector]    eta_alice, eta_bob, dark_current, pulse_duration, gate_time,
//                 lens_diameter, filter_bandwidth, fov, e_det, t_corr, apply_t_corr
//   [water]       type, alpha, gamma_dep
//   [scenario]    id, r0
//   [sweep]       l_min, l_max, step, betas, waters, scenarios
//   [montecarlo]  enabled, packets, photons, seed, model
//
// Values take an optional unit suffix ("530 nm", "200 ps", "60 Hz", "180 deg");
// a bare number is read in SI base units. Unknown sections or keys, repeated
// keys and units of the wrong dimension are ConfigErrors.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "uwqkd/environment.hpp"
#include "uwqkd/montecarlo.hpp"

namespace uwqkd::cli {

enum class Dimension { Length, Time, Frequency, Angle, InverseLength, Irradiance, Dimensionless };

// Parses "<number> [unit]" and returns the value in SI base units.
double parse_quantity(std::string_view text, Dimension dim);
// Radians; also accepts "pi", "pi/N" and "k*pi/N".
double parse_angle(std::string_view text);
EventModel parse_event_model(std::string_view text);
std::string_view to_string(EventModel model);

struct McSettings {
  bool enabled = false;
  std::size_t packets = 10000;
  std::size_t photons = 1000;
  std::uint64_t seed = 20240601;
  EventModel model = EventModel::ErrorMechanisms;
};

struct SweepSpec {
  double l_min = 0.0;
  double l_max = 4.0;
  double step = 0.005;
  std::vector<double> betas;
  std::vector<WaterKind> waters;
  std::vector<int> scenarios;

  // Throws DomainError unless l_min >= 0, step > 0 and l_max > l_min.
  void validate() const;
  std::vector<double> lengths() const;
};

struct RunConfig {
  LinkConfig link;  // water and scenario as configured; length from [link]
  double source_fraction = 0.2;
  SweepSpec sweep;
  McSettings mc;
};

// Defaults: clear water, scenario 1, every detector and optics value at its
// preset, sweep over all waters and scenarios with beta in {pi/5, pi/4}.
RunConfig default_config();

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace uwqkd::cli
