#include "uwqkd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "uwqkd/errors.hpp"

namespace uwqkd {

namespace {

enum class Click { None, Signal, Noise };

ComplexMatrix hadamard_pair() {
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexMatrix had(2, 2, {h, h, h, -h});
  return tensor_product(had, had);
}

struct PacketCounts {
  std::uint64_t coincidences = 0;
  std::uint64_t sifted = 0;
  std::uint64_t errors = 0;
};

struct EventTables {
  double eta_a = 0.0;
  double eta_b = 0.0;
  double y0 = 0.0;
  double e_det = 0.0;
  EventModel model = EventModel::ErrorMechanisms;
  std::array<double, 4> out_rect{};
  std::array<double, 4> out_diag{};
  std::array<double, 4> source_diag{};
};

Click draw_click(PacketRng& rng, double eta, double y0) {
  const double u = rng.uniform();
  if (u < eta) return Click::Signal;
  if (u < eta + y0) return Click::Noise;
  return Click::None;
}

PacketCounts run_packet(const EventTables& t, std::uint64_t seed, std::uint64_t packet, std::size_t photons) {
  PacketRng rng(seed, packet);
  PacketCounts counts;
  for (std::size_t i = 0; i < photons; ++i) {
    const Click a = draw_click(rng, t.eta_a, t.y0);
    const Click b = draw_click(rng, t.eta_b, t.y0);
    if (a == Click::None || b == Click::None) continue;
    ++counts.coincidences;

    const std::uint64_t bits = rng.next();
    const auto basis_a = static_cast<MeasurementBasis>(bits & 1U);
    const auto basis_b = static_cast<MeasurementBasis>((bits >> 1) & 1U);
    if (basis_a != basis_b) continue;
    ++counts.sifted;

    int bit_a = static_cast<int>((bits >> 2) & 1U);
    int bit_b = static_cast<int>((bits >> 3) & 1U);
    if (a == Click::Signal && b == Click::Signal) {
      if (t.model == EventModel::ErrorMechanisms) {
        const int channel = born_sample(t.out_diag, rng.uniform());
        const int source = born_sample(t.source_diag, rng.uniform());
        bit_a = channel >> 1;
        bit_b = (channel & 1) ^ ((source >> 1) ^ (source & 1));
      } else {
        const auto& probs = basis_a == MeasurementBasis::Rect ? t.out_rect : t.out_diag;
        const int joint = born_sample(probs, rng.uniform());
        bit_a = joint >> 1;
        bit_b = joint & 1;
      }
      if (rng.uniform() < t.e_det) bit_b ^= 1;
    } else if (a == Click::Signal || b == Click::Signal) {
      // The signal party's bit is its Born marginal; the noise party's bit is
      // uniform, so the record is wrong with probability 1/2 either way.
      const auto& probs = basis_a == MeasurementBasis::Rect ? t.out_rect : t.out_diag;
      const int joint = born_sample(probs, rng.uniform());
      if (a == Click::Signal) bit_a = joint >> 1;
      if (b == Click::Signal) bit_b = joint & 1;
    }
    if (bit_a != bit_b) ++counts.errors;
  }
  return counts;
}

}  // namespace

std::array<double, 4> born_probabilities(const DensityMatrix& rho, MeasurementBasis basis) {
  ComplexMatrix m = rho.matrix();
  if (basis == MeasurementBasis::Diag) {
    static const ComplexMatrix h = hadamard_pair();
    m = h * m * h;
  }
  std::array<double, 4> probs{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = m(i, i).real();
    if (p < -kHermitianTol) throw ChannelValidityError("negative Born probability");
    probs[i] = std::max(p, 0.0);
  }
  return probs;
}

int born_sample(const std::array<double, 4>& probs, double u) {
  double cumulative = 0.0;
  for (int i = 0; i < 3; ++i) {
    cumulative += probs[static_cast<std::size_t>(i)];
    if (u < cumulative) return i;
  }
  return 3;
}

int born_sample(const DensityMatrix& rho, MeasurementBasis basis, double u) {
  return born_sample(born_probabilities(rho, basis), u);
}

PacketRng::PacketRng(std::uint64_t master_seed, std::uint64_t packet) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(packet), static_cast<std::uint32_t>(packet >> 32)};
  engine_.seed(seq);
}

SimResult simulate(const SimConfig& cfg) { return simulate_point(operating_point(cfg.link), cfg); }

SimResult simulate_point(const OperatingPoint& point, const SimConfig& cfg) {
  if (cfg.n_packets < 1 || cfg.photons_per_packet < 1) {
    throw DomainError("packet count and packet size must be at least 1");
  }
  if (!(point.y0 >= 0.0 && point.y0 <= kMaxNoiseProbability)) {
    throw DomainError("noise count y0 is too large to act as a click probability");
  }
  if (!(point.eta_a >= 0.0 && point.eta_b >= 0.0 && point.eta_a + point.y0 <= 1.0 &&
        point.eta_b + point.y0 <= 1.0)) {
    throw DomainError("signal and noise click probabilities exceed 1 on an arm");
  }
  if (!(point.e_det >= 0.0 && point.e_det <= 1.0)) throw DomainError("detector error must lie in [0, 1]");

  EventTables tables;
  tables.eta_a = point.eta_a;
  tables.eta_b = point.eta_b;
  tables.y0 = point.y0;
  tables.e_det = point.e_det;
  tables.model = cfg.model;
  const DensityMatrix source = initial_state(cfg.beta);
  const DensityMatrix out = propagate(source, point.channel);
  tables.out_rect = born_probabilities(out, MeasurementBasis::Rect);
  tables.out_diag = born_probabilities(out, MeasurementBasis::Diag);
  tables.source_diag = born_probabilities(source, MeasurementBasis::Diag);

  std::vector<PacketCounts> packets(cfg.n_packets);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(cfg.threads == 0 ? 1 : cfg.threads, 1, cfg.n_packets));
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      packets[k] = run_packet(tables, cfg.master_seed, k, cfg.photons_per_packet);
    }
  };
  if (workers == 1) {
    run_range(0, cfg.n_packets);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(run_range, cfg.n_packets * w / workers, cfg.n_packets * (w + 1) / workers);
    }
    for (std::thread& th : pool) th.join();
  }

  SimResult r;
  r.pairs = static_cast<std::uint64_t>(cfg.n_packets) * cfg.photons_per_packet;
  r.per_packet_qber.reserve(cfg.n_packets);
  for (const PacketCounts& p : packets) {
    r.coincidences += p.coincidences;
    r.sifted += p.sifted;
    r.errors += p.errors;
    r.per_packet_qber.push_back(p.sifted == 0 ? std::numeric_limits<double>::quiet_NaN()
                                              : static_cast<double>(p.errors) / static_cast<double>(p.sifted));
  }
  if (r.sifted == 0) throw InsufficientStatistics("no sifted coincidences; increase packets or photons");
  r.qber_estimate = static_cast<double>(r.errors) / static_cast<double>(r.sifted);
  r.std_error = std::sqrt(r.qber_estimate * (1.0 - r.qber_estimate) / static_cast<double>(r.sifted));
  return r;
}

double basis_averaged_qber(const OperatingPoint& point, double beta) {
  validate(point.channel);
  const DampedCoefficients damped = closed_form_damped(beta, point.channel.damp_a.p, point.channel.damp_b.p);
  const DepolarizedCoefficients out = closed_form_depolarized(damped, point.channel.dep_a.q, point.channel.dep_b.q);
  const double rect_error = signal_error(point.e_det, std::clamp(out.b1 + out.c1, 0.0, 1.0));
  const double diag_error = signal_error(point.e_det, kraus_error_probability(out.k1));
  const Coincidence c = coincidence_probability(point.eta_a, point.eta_b, point.y0);
  return qber(0.5 * (rect_error + diag_error), c.p_true, c.p_false);
}

double expected_qber(const OperatingPoint& point, double beta, EventModel model) {
  if (model == EventModel::ErrorMechanisms) return evaluate(point, beta).qber;
  return basis_averaged_qber(point, beta);
}

}  // namespace uwqkd
