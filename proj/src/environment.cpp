#include "uwqkd/environment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "uwqkd/errors.hpp"

namespace uwqkd {

WaterType WaterType::preset(WaterKind kind) {
  switch (kind) {
    case WaterKind::Clear:
      return {kind, 0.151, 2.4e-6};
    case WaterKind::Coastal:
      return {kind, 0.339, 3.7e-6};
    case WaterKind::Turbid:
      return {kind, 2.195, 7.5e-6};
  }
  throw DomainError("unknown water kind");
}

AtmosphericScenario AtmosphericScenario::preset(int id) {
  static constexpr std::array<double, 5> kSurfaceIrradiance = {1e-3, 10.0, 50.0, 125.0, 500.0};
  if (id < 1 || id > 5) throw DomainError("scenario id must be 1..5");
  return {id, kSurfaceIrradiance[static_cast<std::size_t>(id - 1)]};
}

LinkConfig LinkConfig::with_length(double length, double source_fraction) const {
  LinkConfig out = *this;
  out.total_length_l = length;
  out.source_pos_x = source_fraction * length;
  return out;
}

void validate(const LinkConfig& cfg) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!(cfg.total_length_l >= 0.0)) throw DomainError("link length must be non-negative");
  if (!(cfg.source_pos_x >= 0.0 && cfg.source_pos_x <= cfg.total_length_l)) {
    throw DomainError("source position must lie within the link");
  }
  if (!(cfg.depth_z >= 0.0)) throw DomainError("depth must be non-negative");
  if (!(cfg.wavelength > 0.0)) throw DomainError("wavelength must be positive");
  if (!(cfg.k_inf >= 0.0)) throw DomainError("irradiance attenuation must be non-negative");
  if (!(cfg.code_rate > 0.0 && cfg.code_rate <= 1.0)) throw DomainError("code rate must lie in (0, 1]");
  if (!(cfg.water.alpha > 0.0 && cfg.water.gamma_dep > 0.0)) {
    throw DomainError("water coefficients must be positive");
  }
  if (!(cfg.scenario.r0 >= 0.0)) throw DomainError("surface irradiance must be non-negative");
  const DetectorParams& d = cfg.detector;
  if (!unit(d.eta_alice) || !unit(d.eta_bob) || !unit(d.e_det) || !unit(d.t_corr)) {
    throw DomainError("detector efficiencies and error rates must lie in [0, 1]");
  }
  if (!(d.i_dc >= 0.0 && d.dt_pulse > 0.0 && d.dt_gate > 0.0 && d.lens_d > 0.0 && d.d_lambda > 0.0 &&
        d.fov_delta > 0.0 && d.fov_delta <= 2.0 * std::numbers::pi)) {
    throw DomainError("detector physical parameters out of range");
  }
}

std::string_view to_string(WaterKind kind) {
  switch (kind) {
    case WaterKind::Clear:
      return "clear";
    case WaterKind::Coastal:
      return "coastal";
    case WaterKind::Turbid:
      return "turbid";
  }
  return "?";
}

std::optional<WaterKind> parse_water(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (WaterKind k : kAllWaters) {
    if (lower == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<int> parse_scenario(std::string_view name) {
  if (!name.empty() && (name.front() == 's' || name.front() == 'S')) name.remove_prefix(1);
  if (name.size() == 1 && name.front() >= '1' && name.front() <= '5') return name.front() - '0';
  return std::nullopt;
}

double transmittance(double alpha, double dist) {
  if (!(dist >= 0.0)) throw DomainError("distance must be non-negative");
  return std::exp(-alpha * dist);
}

std::pair<double, double> arm_efficiencies(const LinkConfig& cfg) {
  const DetectorParams& d = cfg.detector;
  const double corr = d.apply_t_corr ? d.t_corr : 1.0;
  const double dist_b = cfg.total_length_l - cfg.source_pos_x;
  return {corr * d.eta_alice * transmittance(cfg.water.alpha, cfg.source_pos_x),
          corr * d.eta_bob * transmittance(cfg.water.alpha, dist_b)};
}

std::pair<double, double> loss_probabilities(const LinkConfig& cfg) {
  const double dist_b = cfg.total_length_l - cfg.source_pos_x;
  return {1.0 - transmittance(cfg.water.alpha, cfg.source_pos_x), 1.0 - transmittance(cfg.water.alpha, dist_b)};
}

std::pair<double, double> depolarization_probabilities(const LinkConfig& cfg) {
  const double dist_b = cfg.total_length_l - cfg.source_pos_x;
  if (!(cfg.source_pos_x >= 0.0 && dist_b >= 0.0)) throw DomainError("distance must be non-negative");
  // expm1: gamma_dep * d is of order 1e-6.
  return {-std::expm1(-cfg.water.gamma_dep * cfg.source_pos_x),
          -std::expm1(-cfg.water.gamma_dep * dist_b)};
}

ChannelParams channel_params(const LinkConfig& cfg) {
  const auto [p_a, p_b] = loss_probabilities(cfg);
  const auto [q_a, q_b] = depolarization_probabilities(cfg);
  return {{p_a, 0.0}, {p_b, 0.0}, {q_a}, {q_b}};
}

double irradiance(const LinkConfig& cfg) {
  if (!(cfg.depth_z >= 0.0)) throw DomainError("depth must be non-negative");
  return cfg.scenario.r0 * std::exp(-cfg.k_inf * cfg.depth_z);
}

double solid_angle(double fov_delta) { return 2.0 * std::numbers::pi * (1.0 - std::cos(fov_delta / 2.0)); }

double dark_count_term(const DetectorParams& det) { return 4.0 * det.i_dc * det.dt_pulse; }

double background_term(const LinkConfig& cfg) {
  const DetectorParams& d = cfg.detector;
  const double aperture = std::numbers::pi * (d.lens_d / 2.0) * (d.lens_d / 2.0);
  return irradiance(cfg) * aperture * d.dt_gate * cfg.wavelength * d.d_lambda * solid_angle(d.fov_delta) /
         (kPlanck * kSpeedOfLight);
}

double noise_counts_y0(const LinkConfig& cfg) { return dark_count_term(cfg.detector) + background_term(cfg); }

}  // namespace uwqkd
