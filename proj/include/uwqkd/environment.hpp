#pragma once

// Classical optics of the underwater link: Beer-Lambert attenuation, ambient
// irradiance at depth, detector noise counts, and the mapping from link geometry
// to the per-arm channel parameters. All quantities are SI.

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "uwqkd/channels.hpp"

namespace uwqkd {

inline constexpr double kPlanck = 6.62607015e-34;      // J s
inline constexpr double kSpeedOfLight = 2.99792458e8;  // m / s

enum class WaterKind { Clear, Coastal, Turbid };

struct WaterType {
  WaterKind kind = WaterKind::Clear;
  double alpha = 0.151;      // extinction coefficient, 1/m
  double gamma_dep = 2.4e-6; // depolarization coefficient, 1/m

  static WaterType preset(WaterKind kind);
};

struct AtmosphericScenario {
  int id = 1;
  double r0 = 1e-3;  // surface irradiance, W/m^2

  static AtmosphericScenario preset(int id);
};

struct DetectorParams {
  double eta_alice = 0.5;
  double eta_bob = 0.5;
  double i_dc = 60.0;           // Hz
  double dt_pulse = 40e-9;      // s
  double dt_gate = 200e-12;     // s
  double lens_d = 0.10;         // m
  double d_lambda = 0.2e-9;     // m
  double fov_delta = std::numbers::pi;  // rad, full hemisphere
  double e_det = 0.033;
  // Correction coefficient. Only applied to the arm efficiencies when
  // apply_t_corr is set.
  double t_corr = 0.16;
  bool apply_t_corr = false;
};

struct LinkConfig {
  double total_length_l = 0.0;  // m
  double source_pos_x = 0.0;    // m, distance from source to Alice
  double depth_z = 80.0;        // m
  double wavelength = 530e-9;   // m
  double k_inf = 0.08;          // 1/m
  double code_rate = 0.5;       // error-correction code rate
  WaterType water;
  AtmosphericScenario scenario;
  DetectorParams detector;

  // Link of total length `length` with the source at 0.2 * length.
  LinkConfig with_length(double length, double source_fraction = 0.2) const;
};

// Throws DomainError when a field is outside its physical range.
void validate(const LinkConfig& cfg);

inline constexpr std::array<WaterKind, 3> kAllWaters = {WaterKind::Clear, WaterKind::Coastal,
                                                        WaterKind::Turbid};
inline constexpr std::array<int, 5> kAllScenarios = {1, 2, 3, 4, 5};

std::string_view to_string(WaterKind kind);
// "clear", "coastal", "turbid" (case-insensitive).
std::optional<WaterKind> parse_water(std::string_view name);
// "s1".."s5" or "1".."5".
std::optional<int> parse_scenario(std::string_view name);

// e^{-alpha d}
double transmittance(double alpha, double dist);

std::pair<double, double> arm_efficiencies(const LinkConfig& cfg);
std::pair<double, double> loss_probabilities(const LinkConfig& cfg);
std::pair<double, double> depolarization_probabilities(const LinkConfig& cfg);
ChannelParams channel_params(const LinkConfig& cfg);

// Ambient irradiance at the configured depth, W/m^2.
double irradiance(const LinkConfig& cfg);
// Field-of-view solid angle 2 pi (1 - cos(delta / 2)), sr.
double solid_angle(double fov_delta);
double dark_count_term(const DetectorParams& det);
double background_term(const LinkConfig& cfg);
// Expected noise counts per gate, dark plus background.
double noise_counts_y0(const LinkConfig& cfg);

}  // namespace uwqkd
