#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "swipt/constellation.hpp"
#include "swipt/energy_model.hpp"
#include "swipt/rng.hpp"

namespace swipt {

// Per-carrier phase generator for the multisine transmit waveform: either
// continuous i.i.d. draws Phi ~ U[-delta, delta] or i.i.d. picks from a PSK
// constellation under a symbol pmf.
struct PhaseSource {
    enum class Kind { uniform_continuous, constellation };
    Kind kind = Kind::uniform_continuous;
    double delta = 0.0;  // uniform_continuous only
    Constellation c;     // constellation only
    SymbolPmf p;         // constellation only
};

PhaseSource uniform_phase_source(double delta);
PhaseSource constellation_phase_source(const Constellation& c, const SymbolPmf& p);

// Transmit configuration for the N-carrier waveform
//   y(t) = sqrt(2P/N) sum_n cos(2 pi f_n t + Phi_n),
// handled throughout as the complex baseband envelope
//   A(t) = sum_n X_n e^{j 2 pi n delta_f t},  X_n = sqrt(2P/N) e^{j Phi_n}.
// The carrier spacing delta_f = bandwidth/N and symbol period T = 1/delta_f
// scale out of all time averages, so bandwidth is metadata only.
struct TxConfig {
    int carriers = 8;              // N >= 1
    double power = 1e-5;           // average power P, W
    double bandwidth = 10e6;       // Hz
    int num_symbols = 500;         // symbol periods to simulate
    int samples_per_symbol = 0;    // 0 selects the 8N default; < 4N rejected
    std::uint64_t seed = 0;
    PhaseSource source;
};

// Envelope samples for all symbol periods, concatenated;
// samples_per_symbol points per period, phases redrawn each period from an
// independent per-symbol stream (bit-identical for a given seed).
std::vector<std::complex<double>> synthesize_envelope(const TxConfig& cfg);

// Carrier-frequency averages of y^2 and y^4 recovered from the envelope:
// m2 = mean(|A|^2)/2 and m4 = (3/8) mean(|A|^4), exact for a carrier far
// above the envelope bandwidth. Throws on empty input.
struct Moments {
    double m2 = 0.0;
    double m4 = 0.0;
};
Moments empirical_moments(const std::vector<std::complex<double>>& samples);

// Monte-Carlo estimate of the harvested-current metric over
// cfg.num_symbols periods, with the sample standard error of the
// fourth-order term (NaN when only one symbol is simulated).
// Requires cfg and e to agree on carrier count and power.
struct ZdcEstimate {
    double zdc = 0.0;      // amperes
    double stderr4 = 0.0;  // standard error of the k4 term, amperes
    Moments moments;       // pooled m2, m4
};
ZdcEstimate monte_carlo_zdc(const TxConfig& cfg, const EnergyParams& e);

}  // namespace swipt
