#include "uwqkd/cli/csv.hpp"

#include <cstdio>

namespace uwqkd::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string format_optional(const std::optional<double>& v, std::string_view missing) {
  return v ? format_double(*v) : std::string(missing);
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << to_string(r.water) << ',' << r.scenario << ',' << format_double(r.beta) << ','
        << format_double(r.length) << ',' << format_double(r.qber) << ',' << format_double(r.skr) << ','
        << format_double(r.p_coincidence) << ',' << format_optional(r.mc_qber, "") << ','
        << format_optional(r.mc_stderr, "") << '\n';
  }
}

void write_threshold_csv(std::ostream& out, const std::vector<ThresholdReport>& reports) {
  out << kThresholdHeader << '\n';
  for (const ThresholdReport& r : reports) {
    out << to_string(r.water) << ',' << r.scenario << ',' << format_double(r.beta) << ','
        << format_optional(r.qber_secure_distance, kBeyondRange) << ','
        << format_optional(r.skr_zero_distance, kBeyondRange) << '\n';
  }
}

}  // namespace uwqkd::cli
