#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "uwqkd/channels.hpp"
#include "uwqkd/errors.hpp"
#include "uwqkd/quantum_core.hpp"

namespace {

using namespace uwqkd;
constexpr double kPi = std::numbers::pi;

double max_diff(const ComplexMatrix& m, const oracle::Mat4& ref) {
  double d = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) d = std::max(d, std::abs(m(r, c) - ref[r][c]));
  return d;
}

ChannelParams make_params(double pa, double pb, double qa, double qb) {
  ChannelParams params;
  params.damp_a.p = pa;
  params.damp_b.p = pb;
  params.dep_a.q = qa;
  params.dep_b.q = qb;
  return params;
}

std::array<double, 5> grid(double hi) {
  return {0.0, 0.25 * hi, 0.5 * hi, 0.75 * hi, hi};
}

TEST(DampingKraus, ZeroLossIsIdentityChannel) {
  const KrausSet set = damping_kraus_single({0.0, 0.0});
  ASSERT_EQ(set.size(), 2U);
  EXPECT_LE(max_abs_diff(set.operators()[0], ComplexMatrix::identity(2)), 0.0);
  // The vanishing K_1 is kept so set sizes stay fixed.
  EXPECT_LE(max_abs_diff(set.operators()[1], ComplexMatrix(2, 2)), 0.0);
  const DensityMatrix rho = initial_state(0.4);
  EXPECT_LE(max_abs_diff(apply_kraus(rho, bipartite_set(set, set)).matrix(), rho.matrix()), 0.0);
}

TEST(DampingKraus, OperatorsWithoutThermalPopulation) {
  for (double p : {0.1, 0.37, 0.9, 1.0}) {
    const KrausSet set = damping_kraus_single({p, 0.0});
    ASSERT_EQ(set.size(), 2U);
    EXPECT_LE(max_abs_diff(set.operators()[0], ComplexMatrix(2, 2, {1.0, 0.0, 0.0, std::sqrt(1.0 - p)})), 1e-15);
    EXPECT_LE(max_abs_diff(set.operators()[1], ComplexMatrix(2, 2, {0.0, std::sqrt(p), 0.0, 0.0})), 1e-15);
  }
}

TEST(DampingKraus, FourOperatorsWithThermalPopulation) {
  const double p = 0.4;
  const double xi = 0.2;
  const KrausSet set = damping_kraus_single({p, xi});
  ASSERT_EQ(set.size(), 4U);
  const double cold = std::sqrt(1.0 - xi);
  const double hot = std::sqrt(xi);
  EXPECT_LE(max_abs_diff(set.operators()[0], ComplexMatrix(2, 2, {cold, 0.0, 0.0, cold * std::sqrt(1.0 - p)})),
            1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[1], ComplexMatrix(2, 2, {0.0, cold * std::sqrt(p), 0.0, 0.0})), 1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[2], ComplexMatrix(2, 2, {0.0, 0.0, hot * std::sqrt(p), 0.0})), 1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[3], ComplexMatrix(2, 2, {hot * std::sqrt(1.0 - p), 0.0, 0.0, hot})),
            1e-15);
}

TEST(DampingKraus, CompletenessOverGrid) {
  for (double p : grid(1.0))
    for (double xi : grid(0.5)) {
      const KrausSet set = damping_kraus_single({p, xi});
      EXPECT_LE(KrausSet::completeness_deviation(set.operators()), 1e-12) << p << ' ' << xi;
    }
}

TEST(DampingKraus, RejectsInvalidParameters) {
  EXPECT_THROW(damping_kraus_single({-0.1, 0.0}), DomainError);
  EXPECT_THROW(damping_kraus_single({1.1, 0.0}), DomainError);
  EXPECT_THROW(damping_kraus_single({0.5, 0.6}), DomainError);
}

TEST(DepolarizingKraus, ZeroIsIdentityChannel) {
  const DensityMatrix rho = initial_state(kPi / 5.0);
  const KrausSet set = depolarizing_kraus_single({0.0});
  EXPECT_LE(max_abs_diff(apply_kraus(rho, bipartite_set(set, set)).matrix(), rho.matrix()), 1e-15);
}

TEST(DepolarizingKraus, ThreeQuartersFullyDepolarizes) {
  const KrausSet set = depolarizing_kraus_single({0.75});
  const ComplexMatrix h = ComplexMatrix::diagonal({1.0, 0.0});  // sigma_z eigenstate
  EXPECT_LE(max_abs_diff(apply_kraus(h, set), 0.5 * ComplexMatrix::identity(2)), 1e-15);
  const ComplexMatrix v = ComplexMatrix::diagonal({0.0, 1.0});
  EXPECT_LE(max_abs_diff(apply_kraus(v, set), 0.5 * ComplexMatrix::identity(2)), 1e-15);
}

TEST(DepolarizingKraus, OperatorsAndCompleteness) {
  const double q = 0.3;
  const KrausSet set = depolarizing_kraus_single({q});
  ASSERT_EQ(set.size(), 4U);
  EXPECT_LE(KrausSet::completeness_deviation(set.operators()), 1e-12);
  EXPECT_LE(max_abs_diff(set.operators()[0], std::sqrt(1.0 - q) * ComplexMatrix::identity(2)), 1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[1], std::sqrt(q / 3.0) * pauli_x()), 1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[2], std::sqrt(q / 3.0) * pauli_y()), 1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[3], std::sqrt(q / 3.0) * pauli_z()), 1e-15);
  EXPECT_THROW(depolarizing_kraus_single({1.5}), DomainError);
}

TEST(BipartiteSet, IdentityTimesIdentity) {
  const KrausSet id2({ComplexMatrix::identity(2)});
  const KrausSet out = bipartite_set(id2, id2);
  ASSERT_EQ(out.size(), 1U);
  EXPECT_LE(max_abs_diff(out.operators()[0], ComplexMatrix::identity(4)), 0.0);
}

TEST(BipartiteSet, SizesMultiply) {
  EXPECT_EQ(bipartite_set(damping_kraus_single({0.2, 0.1}), depolarizing_kraus_single({0.3})).size(), 16U);
  EXPECT_EQ(bipartite_set(damping_kraus_single({0.2, 0.0}), depolarizing_kraus_single({0.3})).size(), 8U);
  EXPECT_EQ(bipartite_set(damping_kraus_single({0.2, 0.0}), damping_kraus_single({0.5, 0.0})).size(), 4U);
}

TEST(BipartiteSet, DampingOperatorsMatchPrintedMatrices) {
  const double pa = 0.2;
  const double pb = 0.5;
  const KrausSet set = bipartite_set(damping_kraus_single({pa, 0.0}), damping_kraus_single({pb, 0.0}));
  ASSERT_EQ(set.size(), 4U);
  const double ta = std::sqrt(1.0 - pa);
  const double tb = std::sqrt(1.0 - pb);
  const double sa = std::sqrt(pa);
  const double sb = std::sqrt(pb);
  ComplexMatrix k00 = ComplexMatrix::diagonal({1.0, tb, ta, ta * tb});
  ComplexMatrix k01(4, 4);
  k01(0, 1) = sb;
  k01(2, 3) = ta * sb;
  ComplexMatrix k10(4, 4);
  k10(0, 2) = sa;
  k10(1, 3) = sa * tb;
  ComplexMatrix k11(4, 4);
  k11(0, 3) = sa * sb;
  EXPECT_LE(max_abs_diff(set.operators()[0], k00), 1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[1], k01), 1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[2], k10), 1e-15);
  EXPECT_LE(max_abs_diff(set.operators()[3], k11), 1e-15);
}

TEST(BipartiteSet, RejectsTwoQubitInputs) {
  const KrausSet id4({ComplexMatrix::identity(4)});
  EXPECT_THROW(bipartite_set(id4, depolarizing_kraus_single({0.1})), DimensionError);
}

TEST(Propagate, ZeroParametersLeaveStateUnchanged) {
  for (double beta : {0.0, kPi / 5.0, kPi / 4.0}) {
    const DensityMatrix rho = initial_state(beta);
    EXPECT_LE(max_abs_diff(propagate(rho, ChannelParams{}).matrix(), rho.matrix()), 1e-15);
  }
  const DensityMatrix bell = propagate(initial_state(kPi / 4.0), ChannelParams{});
  EXPECT_NEAR(bell(kHH, kVV).real(), 0.5, 1e-15);
  EXPECT_NEAR(bell(kVV, kVV).real(), 0.5, 1e-15);
}

TEST(Propagate, MatchesClosedFormAtReferencePoint) {
  const double beta = kPi / 5.0;
  const DensityMatrix brute = propagate(initial_state(beta), make_params(0.2, 0.5, 0.1, 0.1));
  const DensityMatrix closed = to_density_matrix(closed_form_depolarized(closed_form_damped(beta, 0.2, 0.5), 0.1, 0.1));
  EXPECT_LE(max_abs_diff(brute.matrix(), closed.matrix()), 1e-12);
  EXPECT_LE(max_diff(brute.matrix(), oracle::propagated(beta, 0.2, 0.5, 0.1, 0.1)), 1e-12);
}

TEST(Propagate, AppliesDampingBeforeDepolarizing) {
  const double beta = 0.5;
  const ChannelParams params = make_params(0.6, 0.3, 0.4, 0.2);
  const ComplexMatrix out = propagate(initial_state(beta), params).matrix();
  EXPECT_LE(max_diff(out, oracle::propagated(beta, 0.6, 0.3, 0.4, 0.2)), 1e-12);
  const oracle::Mat4 reversed = oracle::channel(oracle::depolarized(oracle::source(beta), 0.4, 0.2),
                                                oracle::local_pairs(oracle::damping(0.6), oracle::damping(0.3)));
  EXPECT_GT(max_diff(out, reversed), 1e-6);
}

TEST(Propagate, OrderSensitivityForRandomParameters) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double beta = u(rng) * kPi / 4.0;
    const ChannelParams params = make_params(u(rng), u(rng), u(rng) * 0.7, u(rng) * 0.7);
    const KrausSet damp = bipartite_damping(params);
    const KrausSet dep = bipartite_depolarizing(params);
    const DensityMatrix rho = initial_state(beta);
    const ComplexMatrix forward = apply_kraus(apply_kraus(rho, damp), dep).matrix();
    const ComplexMatrix backward = apply_kraus(apply_kraus(rho, dep), damp).matrix();
    EXPECT_GT(max_abs_diff(forward, backward), 1e-6) << "trial " << trial;
  }
}

TEST(ClosedFormDamped, IdealChannel) {
  const DampedCoefficients c = closed_form_damped(kPi / 4.0, 0.0, 0.0);
  EXPECT_NEAR(c.a0, 0.5, 1e-15);
  EXPECT_NEAR(c.b0, 0.0, 1e-15);
  EXPECT_NEAR(c.c0, 0.0, 1e-15);
  EXPECT_NEAR(c.d0, 0.5, 1e-15);
  EXPECT_NEAR(c.f0, 0.5, 1e-15);
}

TEST(ClosedFormDamped, FullLossOnArmB) {
  const DampedCoefficients c = closed_form_damped(kPi / 4.0, 0.0, 1.0);
  EXPECT_NEAR(c.a0, 0.5, 1e-15);
  EXPECT_NEAR(c.b0, 0.0, 1e-15);
  EXPECT_NEAR(c.c0, 0.5, 1e-15);
  EXPECT_NEAR(c.d0, 0.0, 1e-15);
  EXPECT_NEAR(c.f0, 0.0, 1e-15);
}

TEST(ClosedFormDamped, MatchesOracleAtReferencePoint) {
  const double beta = kPi / 5.0;
  EXPECT_LE(max_diff(to_density_matrix(closed_form_damped(beta, 0.2, 0.5)).matrix(), oracle::damped(beta, 0.2, 0.5)),
            1e-12);
}

TEST(ClosedFormDamped, MatchesOracleOnGrid) {
  for (double beta : grid(kPi / 4.0))
    for (double pa : grid(1.0))
      for (double pb : grid(1.0)) {
        const DampedCoefficients c = closed_form_damped(beta, pa, pb);
        EXPECT_LE(max_diff(to_density_matrix(c).matrix(), oracle::damped(beta, pa, pb)), 1e-12)
            << beta << ' ' << pa << ' ' << pb;
        EXPECT_NEAR(c.a0 + c.b0 + c.c0 + c.d0, 1.0, 1e-12);
        EXPECT_LE(c.f0 * c.f0, c.a0 * c.d0 + 1e-15);
      }
}

TEST(ClosedFormDepolarized, ZeroDepolarizationIsIdentity) {
  const DampedCoefficients d = closed_form_damped(0.6, 0.3, 0.7);
  const DepolarizedCoefficients c = closed_form_depolarized(d, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(c.a1, d.a0);
  EXPECT_DOUBLE_EQ(c.b1, d.b0);
  EXPECT_DOUBLE_EQ(c.c1, d.c0);
  EXPECT_DOUBLE_EQ(c.d1, d.d0);
  EXPECT_DOUBLE_EQ(c.k1, d.f0);
}

TEST(ClosedFormDepolarized, FullDepolarizationOfBothArms) {
  for (double beta : {0.0, kPi / 5.0, kPi / 4.0}) {
    const DepolarizedCoefficients c = closed_form_depolarized(closed_form_damped(beta, 0.3, 0.8), 0.75, 0.75);
    EXPECT_NEAR(c.a1, 0.25, 1e-15);
    EXPECT_NEAR(c.b1, 0.25, 1e-15);
    EXPECT_NEAR(c.c1, 0.25, 1e-15);
    EXPECT_NEAR(c.d1, 0.25, 1e-15);
    EXPECT_NEAR(c.k1, 0.0, 1e-15);
  }
}

TEST(ClosedFormDepolarized, MatchesPropagateAtReferencePoint) {
  const double beta = kPi / 5.0;
  const DepolarizedCoefficients c = closed_form_depolarized(closed_form_damped(beta, 0.2, 0.5), 0.1, 0.3);
  const DensityMatrix brute = propagate(initial_state(beta), make_params(0.2, 0.5, 0.1, 0.3));
  EXPECT_LE(max_abs_diff(to_density_matrix(c).matrix(), brute.matrix()), 1e-12);
}

TEST(ClosedFormDepolarized, MatchesOracleOnFiveDimensionalGrid) {
  for (double beta : grid(kPi / 4.0))
    for (double pa : grid(1.0))
      for (double pb : grid(1.0))
        for (double qa : grid(1.0))
          for (double qb : grid(1.0)) {
            const DepolarizedCoefficients c = closed_form_depolarized(closed_form_damped(beta, pa, pb), qa, qb);
            ASSERT_LE(max_diff(to_density_matrix(c).matrix(), oracle::propagated(beta, pa, pb, qa, qb)), 1e-12)
                << beta << ' ' << pa << ' ' << pb << ' ' << qa << ' ' << qb;
            ASSERT_NEAR(c.a1 + c.b1 + c.c1 + c.d1, 1.0, 1e-12);
            ASSERT_LE(c.k1 * c.k1, c.a1 * c.d1 + 1e-15);
          }
}

// The oracle fixes the single-qubit weights: the population kept is 1 - 2q/3,
// the population moved is 2q/3 and coherences shrink by 1 - 4q/3.
TEST(DepolarizingWeights, FixedByOracle) {
  for (double q : {0.0, 0.1, 0.3, 0.5, 0.75, 0.9, 1.0}) {
    const auto [kept, moved] = oracle::depolarizing_diagonal_weights(q);
    const DepolarizingWeights w = depolarizing_weights(q);
    EXPECT_NEAR(w.keep, kept, 1e-15) << q;
    EXPECT_NEAR(w.swap, moved, 1e-15) << q;
    EXPECT_NEAR(w.coherence, oracle::depolarizing_coherence_factor(q), 1e-15) << q;
    EXPECT_NEAR(kept, 1.0 - 2.0 * q / 3.0, 1e-15);
    EXPECT_NEAR(w.keep + w.swap, 1.0, 1e-15);
  }
}

// Using 1 - 4q/3 for the kept population would lose trace.
TEST(DepolarizingWeights, KeptWeightEqualToCoherenceFactorBreaksTrace) {
  const double q = 0.3;
  const double wrong_keep = 1.0 - 4.0 * q / 3.0;
  const double swap = 2.0 * q / 3.0;
  EXPECT_GT(std::abs(wrong_keep + swap - 1.0), 0.1);
  const DampedCoefficients d = closed_form_damped(kPi / 5.0, 0.2, 0.5);
  const double trace = (wrong_keep * wrong_keep + 2.0 * wrong_keep * swap + swap * swap) * (d.a0 + d.b0 + d.c0 + d.d0);
  EXPECT_GT(std::abs(trace - 1.0), 0.1);
  EXPECT_NEAR(oracle::trace_real(oracle::propagated(kPi / 5.0, 0.2, 0.5, q, q)), 1.0, 1e-12);
}

TEST(ClosedFormDepolarized, CoherenceMonotoneInEveryChannelParameter) {
  const std::array<double, 11> steps = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  for (double beta : {kPi / 8.0, kPi / 5.0, kPi / 4.0}) {
    for (int axis = 0; axis < 4; ++axis) {
      for (double fixed : {0.0, 0.2, 0.5}) {
        double previous = 1.0;
        for (double v : steps) {
          std::array<double, 4> x = {fixed, fixed, fixed, fixed};
          x[static_cast<std::size_t>(axis)] = axis >= 2 ? 0.75 * v : v;
          const double k1 = closed_form_depolarized(closed_form_damped(beta, x[0], x[1]), x[2], x[3]).k1;
          EXPECT_LE(k1, previous + 1e-15) << "axis " << axis << " beta " << beta;
          previous = k1;
        }
      }
    }
  }
}

}  // namespace
