#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "swipt/constellation.hpp"

namespace swipt {

// Complex AWGN channel Y = X + Z with circularly symmetric unit-variance
// noise (0.5 per real dimension). The SNR gamma is carried entirely by the
// input amplitude sqrt(gamma); rate computations therefore use the
// constellation's phases with that amplitude.
struct AwgnChannel {
    double gamma = 0.0;  // linear SNR, >= 0
};

// Mixture density of the channel output:
// (1/pi) sum_m p_m exp(-|y - sqrt(gamma) e^{j phi_m}|^2).
double output_pdf(std::complex<double> y, const SymbolPmf& p, const Constellation& c,
                  const AwgnChannel& ch);

// Output-entropy integrator on a fixed Simpson tensor grid over
// [-(sqrt(gamma)+5), sqrt(gamma)+5]^2. The grid level is chosen once at
// construction by refining until two successive levels agree within 1e-3
// bits on the uniform pmf, then frozen, so entropy values and their
// analytic gradients stay mutually consistent for the optimizer.
// Throws std::runtime_error if refinement does not settle.
class OutputEntropy {
public:
    OutputEntropy(const Constellation& c, const AwgnChannel& ch);

    // p is treated as a general nonnegative weight vector; enforcing the
    // unit sum is the optimizer's business, not the integrator's (finite
    // difference checks evaluate slightly off the simplex).
    double entropy_bits(const SymbolPmf& p) const;

    // entropy - log2(pi e): may be slightly negative near a degenerate pmf.
    double mutual_information_raw_bits(const SymbolPmf& p) const;

    // Raw value clamped to [0, log2 M].
    double mutual_information_bits(const SymbolPmf& p) const;

    // Partial derivatives dH/dp_m of the discretized entropy (raw partials,
    // not projected onto the simplex).
    std::vector<double> grad_entropy_bits(const SymbolPmf& p) const;

    int grid_points_per_axis() const { return n_; }
    int symbol_count() const { return M_; }
    double gamma() const { return gamma_; }

private:
    explicit OutputEntropy(const Constellation& c, const AwgnChannel& ch, int n);
    void build_grid(const Constellation& c, int n);
    void check_weights(const SymbolPmf& p) const;
    double entropy_at_level(const std::vector<double>& probs) const;

    int M_ = 0;
    double gamma_ = 0.0;
    int n_ = 0;                    // points per axis (odd)
    std::vector<double> weights_;  // flattened Simpson weights, n^2
    std::vector<double> kernels_;  // exp(-|y - x_m|^2), layout [cell][m]
};

enum class MiMethod { quadrature, monte_carlo };

// Mutual information I(X;Y) = H(Y) - log2(pi e) in bits per symbol,
// clamped to [0, log2 M]. The Monte-Carlo path averages
// log2(p(y|x)/p_Y(y)) over `draws` channel uses.
double mutual_information(const SymbolPmf& p, const Constellation& c, const AwgnChannel& ch,
                          MiMethod method = MiMethod::quadrature,
                          std::uint64_t seed = 0, long draws = 1000000);

// Total rate over N parallel subbands carrying i.i.d. inputs.
double sum_rate(double bits_per_symbol, int carriers);

// Density of the received phase given symbol m was sent:
// (1/2pi) e^{-gamma} + sqrt(gamma/pi) cos(d) e^{-gamma sin^2(d)} (1 - Q(sqrt(2 gamma) cos(d)))
// with d = phi - phi_m wrapped to [-pi, pi).
double phase_pdf(double phi, int m, const Constellation& c, const AwgnChannel& ch);

// One decision arc on the circle: [lo, hi] with hi >= lo; endpoints may lie
// outside [-pi, pi) and are understood modulo 2 pi. Zero width = excluded
// symbol.
struct PhaseInterval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

// Maximum-posterior decision regions: the boundary between phase-adjacent
// symbols solves p_l f(phi|l) = p_{l+1} f(phi|l+1) by bisection, and the
// outermost regions close through the antipodal gap. Symbols with zero
// probability get empty regions. all_roots_found flips to false when a
// posterior crossing is absent (extreme pmf skew) and the contested arc is
// handed to the dominant symbol.
struct DecisionRegions {
    std::vector<PhaseInterval> intervals;  // size M, aligned with symbol index
    bool all_roots_found = true;
};
DecisionRegions map_decision_regions(const SymbolPmf& p, const Constellation& c,
                                     const AwgnChannel& ch);

// Hard-decision channel induced by the MAP phase detector.
struct DmcChannel {
    std::vector<std::vector<double>> transitions;  // M x M, rows sum to 1
    DecisionRegions regions;
};

// Row m integrates the conditional phase density over each decision arc by
// adaptive quadrature (absolute tolerance 1e-10); rows are renormalized only
// if their drift from 1 is below 1e-8, otherwise this throws.
DmcChannel transition_matrix(const SymbolPmf& p, const Constellation& c, const AwgnChannel& ch);

// Alternating-maximization capacity of a discrete memoryless channel.
// Stops when the capacity upper/lower bound gap drops below tol (bits);
// throws std::runtime_error if max_iter is exhausted first.
struct BaResult {
    double capacity_bits = 0.0;
    SymbolPmf p_opt;
    int iterations = 0;
};
BaResult blahut_arimoto(const DmcChannel& dmc, double tol = 1e-10, int max_iter = 20000);

}  // namespace swipt
