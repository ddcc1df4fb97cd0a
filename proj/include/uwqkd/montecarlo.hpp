#pragma once

// Photon-pair Monte Carlo estimate of the BBM92 QBER.
//
// Event model, per emitted pair:
//   1. Each arm independently registers a signal click (probability eta), a
//      noise click (probability y0) or nothing. The two click kinds are
//      exclusive, so P(coincidence) = (eta_A + y0)(eta_B + y0), which is the
//      true + false decomposition eta_A eta_B + y0 (eta_A + eta_B) + y0^2.
//   2. On a coincidence both parties draw a basis uniformly; rounds with
//      different bases are discarded (sifting).
//   3. A party with a noise click gets a uniform random bit, so any record
//      involving noise is wrong with probability 1/2.
//   4. Signal-signal records draw their bits according to the event model:
//      - ErrorMechanisms: the channel outcome is sampled from the Born
//        distribution of the propagated state in the diagonal basis, the
//        source non-maximality from the Born distribution of the source state
//        in the diagonal basis, and one detector error flips the relative bit
//        with probability e_det. The three are independent, which is exactly
//        the structure of the closed-form QBER, so the estimate is unbiased for
//        evaluate().qber.
//      - BornSharedBasis: the joint outcome is sampled from the propagated
//        state measured in the shared basis, then the detector error is
//        applied. Its expectation is basis_averaged_qber().
//   5. A sifted record is an error when the two bits disagree.
//
// Packets are batching units only: packet k draws from a generator seeded by
// (master_seed, k), so results do not depend on the number of worker threads.

#include <array>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "uwqkd/analysis.hpp"
#include "uwqkd/environment.hpp"
#include "uwqkd/quantum_core.hpp"

namespace uwqkd {

enum class MeasurementBasis { Rect, Diag };
enum class EventModel { ErrorMechanisms, BornSharedBasis };

// Largest y0 accepted as a per-gate click probability.
inline constexpr double kMaxNoiseProbability = 0.1;

struct SimConfig {
  std::size_t n_packets = 10000;
  std::size_t photons_per_packet = 1000;
  std::uint64_t master_seed = 20240601;
  LinkConfig link;
  double beta = std::numbers::pi / 4.0;
  EventModel model = EventModel::ErrorMechanisms;
  unsigned threads = 1;
};

struct SimResult {
  std::uint64_t pairs = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t sifted = 0;
  std::uint64_t errors = 0;
  double qber_estimate = 0.0;
  double std_error = 0.0;
  // NaN for a packet without sifted records.
  std::vector<double> per_packet_qber;
};

// Outcome probabilities indexed by 2 * bit_A + bit_B, bit 0 = H (Rect) or + (Diag).
std::array<double, 4> born_probabilities(const DensityMatrix& rho, MeasurementBasis basis);

// Inverse-CDF draw with u in [0, 1).
int born_sample(const std::array<double, 4>& probs, double u);
int born_sample(const DensityMatrix& rho, MeasurementBasis basis, double u);

// Per-packet generator: 64-bit Mersenne Twister seeded from (master_seed, packet).
class PacketRng {
 public:
  PacketRng(std::uint64_t master_seed, std::uint64_t packet);

  std::uint64_t next() { return engine_(); }
  // 53-bit uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

SimResult simulate(const SimConfig& cfg);

// Runs the event model at an explicit operating point; cfg.link is ignored.
SimResult simulate_point(const OperatingPoint& point, const SimConfig& cfg);

// Expected QBER of the BornSharedBasis model: the sifted signal error is the
// average of the rectilinear (b1 + c1) and diagonal (1/2 - k1) error rates,
// each combined with the detector error.
double basis_averaged_qber(const OperatingPoint& point, double beta);

// Expectation of the estimator for the chosen model.
double expected_qber(const OperatingPoint& point, double beta, EventModel model);

}  // namespace uwqkd
