#pragma once

// CSV emission. UTF-8, header row, '.' decimal separator, 17 significant digits.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "uwqkd/cli/sweep.hpp"

namespace uwqkd::cli {

inline constexpr std::string_view kSweepHeader =
    "water,scenario,beta_rad,L_m,qber,skr_bits_per_pulse,p_coincidence,mc_qber,mc_stderr";
inline constexpr std::string_view kThresholdHeader =
    "water,scenario,beta_rad,qber_secure_distance_m,skr_zero_distance_m";
// Written in place of a distance whose crossing lies beyond the search range.
inline constexpr std::string_view kBeyondRange = "beyond_l_max";

// printf "%.17g"; the program never changes the C locale.
std::string format_double(double v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_threshold_csv(std::ostream& out, const std::vector<ThresholdReport>& reports);

}  // namespace uwqkd::cli
