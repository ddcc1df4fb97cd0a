#pragma once

// Closed-form QBER and secret key rate of BBM92 with a non-maximally entangled
// source, assembled from the channel coefficients and the link's classical optics.

#include "uwqkd/channels.hpp"
#include "uwqkd/environment.hpp"

namespace uwqkd {

struct ErrorBudget {
  double p_kraus = 0.0;      // channel-induced error, 1/2 - k1
  double p_nonmax = 0.0;     // source non-maximality error in the D/A basis
  double e_sig = 0.0;        // channel combined with detector error
  double p_false_det = 0.0;  // e_sig combined with the non-maximality error
};

struct Coincidence {
  double p_true = 0.0;
  double p_false = 0.0;
  double p_coincidence = 0.0;
};

struct PerformanceResult {
  double qber = 0.0;
  double skr = 0.0;  // bits per pulse
  double p_coincidence = 0.0;
  double p_true = 0.0;
  double p_false = 0.0;
  double k1 = 0.0;
  ErrorBudget budget;
};

// Everything the QBER formula needs about one link, after the optics are resolved.
struct OperatingPoint {
  double eta_a = 0.0;
  double eta_b = 0.0;
  double y0 = 0.0;
  double e_det = 0.0;
  ChannelParams channel;
};

OperatingPoint operating_point(const LinkConfig& cfg);

Coincidence coincidence_probability(double eta_a, double eta_b, double y0);

// 1/2 - k1; k1 outside [-1/2, 1/2] raises DomainError.
double kraus_error_probability(double k1);
// (1 - sin 2 beta) / 2
double nonmax_error_probability(double beta);
double signal_error(double e_det, double p_kraus);
// Exclusive-or of two independent error events.
double false_detection_probability(double e_sig, double p_nonmax);
// Throws UndefinedOperatingPoint when p_true + p_false is zero.
double qber(double p_false_det, double p_true, double p_false);

double binary_entropy(double x);
// Key fraction 1 - (1 + (1 - R_c) / h(0.11)) h(qber), before clipping at zero.
double key_fraction(double qber, double code_rate);
// QBER at which the key fraction vanishes, by bisection to 1e-10.
double qber_root(double code_rate);
double skr(double qber, double p_coincidence, double code_rate = 0.5);

// k1 of the propagated state via the closed forms.
double corner_coherence(double beta, const ChannelParams& channel);

PerformanceResult evaluate(const OperatingPoint& point, double beta, double code_rate = 0.5);
PerformanceResult evaluate_link(const LinkConfig& cfg, double beta);

}  // namespace uwqkd
