#include "swipt/waveform_sim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace swipt {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 transform computing a[k] <- sum_n a[n] e^{+j 2 pi n k / K}
// (synthesis sign, no scaling). Requires power-of-two length.
void fft_synthesis_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

void check_config(const TxConfig& cfg) {
    if (cfg.carriers < 1)
        throw std::invalid_argument("synthesize_envelope: need at least one carrier");
    if (cfg.num_symbols < 1)
        throw std::invalid_argument("synthesize_envelope: need at least one symbol period");
    if (!(cfg.power > 0.0))
        throw std::invalid_argument("synthesize_envelope: average power must be positive");
    if (cfg.samples_per_symbol != 0 && cfg.samples_per_symbol < 4 * cfg.carriers)
        throw std::invalid_argument("synthesize_envelope: undersampled configuration; need at least 4 samples per carrier per symbol period");
    if (cfg.source.kind == PhaseSource::Kind::uniform_continuous) {
        if (cfg.source.delta < 0.0 || cfg.source.delta > kPi + 1e-12)
            throw std::invalid_argument("synthesize_envelope: phase half-range must lie in [0, pi]");
    } else {
        validate_pmf(cfg.source.p, cfg.source.c.M);
    }
}

int effective_samples(const TxConfig& cfg) {
    return cfg.samples_per_symbol > 0 ? cfg.samples_per_symbol : 8 * cfg.carriers;
}

// Draws the per-carrier phases for one symbol period.
void draw_phases(const PhaseSource& src, int carriers, SplitMix64& rng, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(carriers));
    if (src.kind == PhaseSource::Kind::uniform_continuous) {
        for (int n = 0; n < carriers; ++n) out[static_cast<std::size_t>(n)] = rng.uniform_symmetric(src.delta);
        return;
    }
    // Inverse-cdf draw from the symbol pmf.
    for (int n = 0; n < carriers; ++n) {
        const double u = rng.uniform01();
        double cum = 0.0;
        int pick = src.c.M - 1;
        for (int m = 0; m < src.c.M; ++m) {
            cum += src.p[m];
            if (u < cum) {
                pick = m;
                break;
            }
        }
        out[static_cast<std::size_t>(n)] = src.c.phases[static_cast<std::size_t>(pick)];
    }
}

// Envelope samples for one symbol period: A(t_k) = s sum_n e^{j Phi_n} e^{j 2 pi n k / K}.
void synthesize_symbol(const TxConfig& cfg, const std::vector<double>& phases,
                       std::vector<std::complex<double>>& out) {
    const int N = cfg.carriers;
    const std::size_t K = static_cast<std::size_t>(effective_samples(cfg));
    const double s = std::sqrt(2.0 * cfg.power / N);

    out.assign(K, {0.0, 0.0});
    for (int n = 0; n < N; ++n)
        out[static_cast<std::size_t>(n)] =
            std::polar(s, phases[static_cast<std::size_t>(n)]);

    if (is_pow2(K)) {
        fft_synthesis_pow2(out);
        return;
    }
    // Direct evaluation via an exact twiddle table for non-power-of-two K.
    std::vector<std::complex<double>> coeff(out.begin(), out.begin() + N);
    std::vector<std::complex<double>> tw(K);
    for (std::size_t m = 0; m < K; ++m)
        tw[m] = std::polar(1.0, 2.0 * kPi * static_cast<double>(m) / static_cast<double>(K));
    for (std::size_t k = 0; k < K; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t n = 0; n < static_cast<std::size_t>(N); ++n)
            acc += coeff[n] * tw[(n * k) % K];
        out[k] = acc;
    }
}

}  // namespace

PhaseSource uniform_phase_source(double delta) {
    PhaseSource src;
    src.kind = PhaseSource::Kind::uniform_continuous;
    src.delta = delta;
    return src;
}

PhaseSource constellation_phase_source(const Constellation& c, const SymbolPmf& p) {
    validate_pmf(p, c.M);
    PhaseSource src;
    src.kind = PhaseSource::Kind::constellation;
    src.c = c;
    src.p = p;
    return src;
}

std::vector<std::complex<double>> synthesize_envelope(const TxConfig& cfg) {
    check_config(cfg);
    const std::size_t K = static_cast<std::size_t>(effective_samples(cfg));
    std::vector<std::complex<double>> all;
    all.reserve(K * static_cast<std::size_t>(cfg.num_symbols));

    const SplitMix64 root(cfg.seed);
    std::vector<double> phases;
    std::vector<std::complex<double>> symbol;
    for (int i = 0; i < cfg.num_symbols; ++i) {
        SplitMix64 rng = root.split(static_cast<std::uint64_t>(i));
        draw_phases(cfg.source, cfg.carriers, rng, phases);
        synthesize_symbol(cfg, phases, symbol);
        all.insert(all.end(), symbol.begin(), symbol.end());
    }
    return all;
}

Moments empirical_moments(const std::vector<std::complex<double>>& samples) {
    if (samples.empty())
        throw std::invalid_argument("empirical_moments: no samples");
    long double acc2 = 0.0L;
    long double acc4 = 0.0L;
    for (const auto& a : samples) {
        const long double mag2 = static_cast<long double>(std::norm(a));
        acc2 += mag2;
        acc4 += mag2 * mag2;
    }
    const long double count = static_cast<long double>(samples.size());
    return Moments{static_cast<double>(acc2 / count / 2.0L),
                   static_cast<double>(acc4 / count * 3.0L / 8.0L)};
}

ZdcEstimate monte_carlo_zdc(const TxConfig& cfg, const EnergyParams& e) {
    check_config(cfg);
    if (cfg.carriers != e.carriers)
        throw std::invalid_argument("monte_carlo_zdc: carrier counts disagree between waveform and energy model");
    if (std::abs(cfg.power - e.power) > 1e-12 * std::max(cfg.power, e.power))
        throw std::invalid_argument("monte_carlo_zdc: average powers disagree between waveform and energy model");

    const SplitMix64 root(cfg.seed);
    const int S = cfg.num_symbols;

    // Per-symbol moments; equal sample counts make the pooled moment the
    // plain mean over symbols.
    long double sum_m2 = 0.0L;
    long double sum_m4 = 0.0L;
    long double sum_m4_sq = 0.0L;
    std::vector<double> phases;
    std::vector<std::complex<double>> symbol;
    for (int i = 0; i < S; ++i) {
        SplitMix64 rng = root.split(static_cast<std::uint64_t>(i));
        draw_phases(cfg.source, cfg.carriers, rng, phases);
        synthesize_symbol(cfg, phases, symbol);
        const Moments m = empirical_moments(symbol);
        sum_m2 += m.m2;
        sum_m4 += m.m4;
        sum_m4_sq += static_cast<long double>(m.m4) * m.m4;
    }

    ZdcEstimate est;
    est.moments.m2 = static_cast<double>(sum_m2 / S);
    est.moments.m4 = static_cast<double>(sum_m4 / S);
    est.zdc = zdc_from_moments(est.moments.m2, est.moments.m4, e);
    if (S > 1) {
        const long double var =
            (sum_m4_sq - sum_m4 * sum_m4 / S) / (static_cast<long double>(S) - 1.0L);
        const double sd = std::sqrt(std::max(0.0, static_cast<double>(var)));
        est.stderr4 = e.k4 * e.rs * e.rs * sd / std::sqrt(static_cast<double>(S));
    } else {
        est.stderr4 = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

}  // namespace swipt
