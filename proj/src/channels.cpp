#include "uwqkd/channels.hpp"

#include <cmath>

#include "uwqkd/errors.hpp"

namespace uwqkd {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void validate(const DampingParams& params) {
  if (!is_probability(params.p)) throw DomainError("loss probability must lie in [0, 1]");
  if (!(params.xi >= 0.0 && params.xi <= 0.5)) throw DomainError("thermal parameter must lie in [0, 1/2]");
}

void validate(const DepolarizingParams& params) {
  if (!is_probability(params.q)) throw DomainError("depolarization probability must lie in [0, 1]");
}

void validate(const ChannelParams& params) {
  validate(params.damp_a);
  validate(params.damp_b);
  validate(params.dep_a);
  validate(params.dep_b);
}

DepolarizingWeights depolarizing_weights(double q) {
  validate(DepolarizingParams{q});
  return {1.0 - 2.0 * q / 3.0, 2.0 * q / 3.0, 1.0 - 4.0 * q / 3.0};
}

KrausSet damping_kraus_single(const DampingParams& params) {
  validate(params);
  const double keep = std::sqrt(1.0 - params.p);
  const double lose = std::sqrt(params.p);
  const double cold = std::sqrt(1.0 - params.xi);

  std::vector<ComplexMatrix> ops;
  ops.push_back(ComplexMatrix(2, 2, {1.0, 0.0, 0.0, keep}) * cold);
  ops.push_back(ComplexMatrix(2, 2, {0.0, lose, 0.0, 0.0}) * cold);
  if (params.xi > 0.0) {
    const double hot = std::sqrt(params.xi);
    ops.push_back(ComplexMatrix(2, 2, {0.0, 0.0, lose, 0.0}) * hot);
    ops.push_back(ComplexMatrix(2, 2, {keep, 0.0, 0.0, 1.0}) * hot);
  }
  return KrausSet(std::move(ops));
}

KrausSet depolarizing_kraus_single(const DepolarizingParams& params) {
  validate(params);
  const double id = std::sqrt(1.0 - params.q);
  const double pauli = std::sqrt(params.q / 3.0);
  return KrausSet({ComplexMatrix::identity(2) * id, pauli_x() * pauli, pauli_y() * pauli,
                   pauli_z() * pauli});
}

KrausSet bipartite_set(const KrausSet& set_a, const KrausSet& set_b) {
  if (set_a.dim() != 2 || set_b.dim() != 2) {
    throw DimensionError("bipartite_set expects two single-photon Kraus sets");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(set_a.size() * set_b.size());
  for (const ComplexMatrix& a : set_a.operators()) {
    for (const ComplexMatrix& b : set_b.operators()) ops.push_back(tensor_product(a, b));
  }
  return KrausSet(std::move(ops));
}

KrausSet bipartite_damping(const ChannelParams& params) {
  return bipartite_set(damping_kraus_single(params.damp_a), damping_kraus_single(params.damp_b));
}

KrausSet bipartite_depolarizing(const ChannelParams& params) {
  return bipartite_set(depolarizing_kraus_single(params.dep_a), depolarizing_kraus_single(params.dep_b));
}

DensityMatrix propagate(const DensityMatrix& rho_in, const ChannelParams& params) {
  validate(params);
  const DensityMatrix damped = apply_kraus(rho_in, bipartite_damping(params));
  return apply_kraus(damped, bipartite_depolarizing(params));
}

DampedCoefficients closed_form_damped(double beta, double p_a, double p_b) {
  validate(DampingParams{p_a, 0.0});
  validate(DampingParams{p_b, 0.0});
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const double s2 = s * s;
  const double t_a = 1.0 - p_a;
  const double t_b = 1.0 - p_b;
  return {
      c * c + p_a * p_b * s2,
      p_a * t_b * s2,
      t_a * p_b * s2,
      t_a * t_b * s2,
      std::sqrt(t_a * t_b) * c * s,
  };
}

DepolarizedCoefficients closed_form_depolarized(const DampedCoefficients& d, double q_a, double q_b) {
  const DepolarizingWeights wa = depolarizing_weights(q_a);
  const DepolarizingWeights wb = depolarizing_weights(q_b);
  const double nn = wa.keep * wb.keep;
  const double ns = wa.keep * wb.swap;
  const double sn = wa.swap * wb.keep;
  const double ss = wa.swap * wb.swap;
  // b0 is HV: flipping B's bit reaches HH, flipping A's reaches VV.
  return {
      nn * d.a0 + ns * d.b0 + sn * d.c0 + ss * d.d0,
      ns * d.a0 + nn * d.b0 + ss * d.c0 + sn * d.d0,
      sn * d.a0 + ss * d.b0 + nn * d.c0 + ns * d.d0,
      ss * d.a0 + sn * d.b0 + ns * d.c0 + nn * d.d0,
      wa.coherence * wb.coherence * d.f0,
  };
}

DensityMatrix to_density_matrix(const DampedCoefficients& c) {
  ComplexMatrix m = ComplexMatrix::diagonal({c.a0, c.b0, c.c0, c.d0});
  m(kHH, kVV) = c.f0;
  m(kVV, kHH) = c.f0;
  return DensityMatrix(m);
}

DensityMatrix to_density_matrix(const DepolarizedCoefficients& c) {
  ComplexMatrix m = ComplexMatrix::diagonal({c.a1, c.b1, c.c1, c.d1});
  m(kHH, kVV) = c.k1;
  m(kVV, kHH) = c.k1;
  return DensityMatrix(m);
}

}  // namespace uwqkd
