#include "uwqkd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uwqkd/errors.hpp"

namespace uwqkd {

namespace {

constexpr double kGuard = 1e-12;
constexpr double kSecurityLimit = 0.11;

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

double clamp_unit(double x) {
  if (!(x >= -kGuard && x <= 1.0 + kGuard)) throw DomainError("probability outside [0, 1]");
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

OperatingPoint operating_point(const LinkConfig& cfg) {
  validate(cfg);
  const auto [eta_a, eta_b] = arm_efficiencies(cfg);
  return {eta_a, eta_b, noise_counts_y0(cfg), cfg.detector.e_det, channel_params(cfg)};
}

Coincidence coincidence_probability(double eta_a, double eta_b, double y0) {
  if (!(eta_a >= 0.0 && eta_b >= 0.0 && y0 >= 0.0)) {
    throw DomainError("efficiencies and noise counts must be non-negative");
  }
  const double p_true = eta_a * eta_b;
  const double p_false = y0 * (eta_a + eta_b) + y0 * y0;
  return {p_true, p_false, p_true + p_false};
}

double kraus_error_probability(double k1) {
  if (!(std::abs(k1) <= 0.5 + kGuard)) {
    throw DomainError("corner coherence k1 outside [-1/2, 1/2]: upstream state is invalid");
  }
  return clamp_unit(0.5 - k1);
}

double nonmax_error_probability(double beta) {
  if (!(beta >= 0.0 && beta <= std::numbers::pi / 4.0)) {
    throw DomainError("entanglement angle must lie in [0, pi/4]");
  }
  return clamp_unit((1.0 - std::sin(2.0 * beta)) / 2.0);
}

double signal_error(double e_det, double p_kraus) {
  if (!in_unit(e_det) || !in_unit(p_kraus)) throw DomainError("error probabilities must lie in [0, 1]");
  return clamp_unit(e_det + (1.0 - 2.0 * e_det) * p_kraus);
}

double false_detection_probability(double e_sig, double p_nonmax) {
  if (!in_unit(e_sig) || !in_unit(p_nonmax)) throw DomainError("error probabilities must lie in [0, 1]");
  return clamp_unit(e_sig * (1.0 - p_nonmax) + (1.0 - e_sig) * p_nonmax);
}

double qber(double p_false_det, double p_true, double p_false) {
  const double p_coincidence = p_true + p_false;
  if (!(p_coincidence > 0.0)) {
    throw UndefinedOperatingPoint("coincidence probability is zero; QBER undefined");
  }
  return clamp_unit((p_false_det * p_true + 0.5 * p_false) / p_coincidence);
}

double binary_entropy(double x) {
  // Values up to 1e-12 outside [0, 1] are round-off and snap to the endpoint.
  x = clamp_unit(x);
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double key_fraction(double q, double code_rate) {
  if (!(code_rate > 0.0 && code_rate <= 1.0)) throw DomainError("code rate must lie in (0, 1]");
  static const double h_limit = binary_entropy(kSecurityLimit);
  return 1.0 - (1.0 + (1.0 - code_rate) / h_limit) * binary_entropy(q);
}

double qber_root(double code_rate) {
  auto bisect = [](double rc) {
    // key_fraction decreases strictly on [0, 1/2], from 1 to a negative value.
    double lo = 0.0;
    double hi = 0.5;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      (key_fraction(mid, rc) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  static const double default_root = bisect(0.5);
  if (code_rate == 0.5) return default_root;
  return bisect(code_rate);
}

double skr(double q, double p_coincidence, double code_rate) {
  q = clamp_unit(q);
  if (!(p_coincidence >= 0.0)) throw DomainError("coincidence probability must be non-negative");
  if (q >= qber_root(code_rate)) return 0.0;
  return 0.5 * p_coincidence * std::max(0.0, key_fraction(q, code_rate));
}

double corner_coherence(double beta, const ChannelParams& channel) {
  validate(channel);
  if (channel.damp_a.xi != 0.0 || channel.damp_b.xi != 0.0) {
    throw DomainError("closed-form state assumes a zero thermal parameter");
  }
  const DampedCoefficients damped = closed_form_damped(beta, channel.damp_a.p, channel.damp_b.p);
  return closed_form_depolarized(damped, channel.dep_a.q, channel.dep_b.q).k1;
}

PerformanceResult evaluate(const OperatingPoint& point, double beta, double code_rate) {
  PerformanceResult r;
  r.k1 = corner_coherence(beta, point.channel);
  r.budget.p_kraus = kraus_error_probability(r.k1);
  r.budget.p_nonmax = nonmax_error_probability(beta);
  r.budget.e_sig = signal_error(point.e_det, r.budget.p_kraus);
  r.budget.p_false_det = false_detection_probability(r.budget.e_sig, r.budget.p_nonmax);

  const Coincidence c = coincidence_probability(point.eta_a, point.eta_b, point.y0);
  r.p_true = c.p_true;
  r.p_false = c.p_false;
  r.p_coincidence = c.p_coincidence;
  r.qber = qber(r.budget.p_false_det, c.p_true, c.p_false);
  r.skr = skr(r.qber, c.p_coincidence, code_rate);
  return r;
}

PerformanceResult evaluate_link(const LinkConfig& cfg, double beta) {
  return evaluate(operating_point(cfg), beta, cfg.code_rate);
}

}  // namespace uwqkd
