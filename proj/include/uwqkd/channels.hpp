#pragma once

// Photon-loss (amplitude damping) and depolarizing channels for the two arms of
// the link, their bipartite composition, and the closed-form output states.

#include "uwqkd/quantum_core.hpp"

namespace uwqkd {

struct DampingParams {
  double p = 0.0;   // photon-loss probability, [0, 1]
  double xi = 0.0;  // thermal parameter, [0, 1/2]
};

struct DepolarizingParams {
  double q = 0.0;  // depolarization probability, [0, 1]
};

struct ChannelParams {
  DampingParams damp_a;
  DampingParams damp_b;
  DepolarizingParams dep_a;
  DepolarizingParams dep_b;
};

void validate(const DampingParams& params);
void validate(const DepolarizingParams& params);
void validate(const ChannelParams& params);

// Entries of the X-shaped state after damping:
//   [[a0, 0, 0, f0], [0, b0, 0, 0], [0, 0, c0, 0], [f0, 0, 0, d0]]
struct DampedCoefficients {
  double a0 = 0.0;
  double b0 = 0.0;
  double c0 = 0.0;
  double d0 = 0.0;
  double f0 = 0.0;
};

// Same layout after the depolarizing stage, with k1 on the anti-diagonal corners.
struct DepolarizedCoefficients {
  double a1 = 0.0;
  double b1 = 0.0;
  double c1 = 0.0;
  double d1 = 0.0;
  double k1 = 0.0;
};

// Per-arm mixing factors of the depolarizing stage: a diagonal entry keeps weight
// `keep` and receives weight `swap` from the entry with that arm's bit flipped;
// off-diagonal coherences scale by `coherence`.
//
// Brute-force application of {sqrt(1-q) I, sqrt(q/3) X, sqrt(q/3) Y, sqrt(q/3) Z}
// gives keep = 1 - 2q/3, swap = 2q/3, coherence = 1 - 4q/3. A diagonal weight of
// 1 - 4q/3 would make keep + swap = 1 - 2q/3 and lose trace.
struct DepolarizingWeights {
  double keep = 1.0;
  double swap = 0.0;
  double coherence = 1.0;
};

DepolarizingWeights depolarizing_weights(double q);

// Single-photon damping operators. For xi = 0 only {K0, K1} are returned; for
// xi > 0 the thermal pair {K2, K3} follows. Zero operators (p = 0 or p = 1) are kept.
KrausSet damping_kraus_single(const DampingParams& params);

// {sqrt(1-q) I, sqrt(q/3) X, sqrt(q/3) Y, sqrt(q/3) Z}
KrausSet depolarizing_kraus_single(const DepolarizingParams& params);

// All products A_i (x) B_j in lexicographic (i, j) order.
KrausSet bipartite_set(const KrausSet& set_a, const KrausSet& set_b);

KrausSet bipartite_damping(const ChannelParams& params);
KrausSet bipartite_depolarizing(const ChannelParams& params);

// Damping on both arms first, then depolarizing on both arms.
DensityMatrix propagate(const DensityMatrix& rho_in, const ChannelParams& params);

// Closed-form damped state for the source state at angle beta (xi = 0).
DampedCoefficients closed_form_damped(double beta, double p_a, double p_b);

DepolarizedCoefficients closed_form_depolarized(const DampedCoefficients& damped, double q_a,
                                                double q_b);

DensityMatrix to_density_matrix(const DampedCoefficients& c);
DensityMatrix to_density_matrix(const DepolarizedCoefficients& c);

}  // namespace uwqkd
