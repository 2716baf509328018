#include "swipt/phase_stats.hpp"

#include <cmath>
#include <stdexcept>

namespace swipt {

namespace {

// Direct full convolution of two short probability vectors, accumulated in
// extended precision so the 1e-12 simplex tolerance survives four folds.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<long double> acc(a.size() + b.size() - 1, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] += static_cast<long double>(a[i]) * b[j];
    std::vector<double> out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<double>(acc[k]);
    return out;
}

}  // namespace

ThetaDistribution theta_pmf(const SymbolPmf& p, const Constellation& c) {
    validate_pmf(p, c.M);
    const int M = c.M;
    const double gap = phase_gap(c);

    // Phases are phi_m = phi_max - m*gap, so Theta = gap*(m2+m3-m0-m1) and
    // the ascending atom index is k = m2+m3 + (M-1-m0) + (M-1-m1): the pmf
    // of Theta is the convolution p*p*p'*p' on that index.
    const std::vector<double> pf = flipped(p).probs;
    const std::vector<double> pp = convolve(p.probs, p.probs);
    const std::vector<double> ff = convolve(pf, pf);

    ThetaDistribution d;
    d.probs = convolve(pp, ff);
    d.support.resize(d.probs.size());
    const int K = 4 * (M - 1) + 1;
    for (int k = 0; k < K; ++k)
        d.support[static_cast<std::size_t>(k)] = gap * (k - 2 * (M - 1));
    return d;
}

double xi(const SymbolPmf& p, const Constellation& c) {
    // Accepts general nonnegative weights, not just exact pmfs: the energy
    // factor is differentiated by finite differences in the gradient checks,
    // which evaluate it slightly off the simplex.
    if (p.size() != c.M)
        throw std::invalid_argument("xi: weight vector length must match the symbol count");
    for (int m = 0; m < c.M; ++m)
        if (!(p[m] >= 0.0))
            throw std::invalid_argument("xi: weights must be nonnegative");

    const double gap = phase_gap(c);
    const std::vector<double> pf = flipped(p).probs;
    const std::vector<double> pp = convolve(p.probs, p.probs);
    const std::vector<double> ff = convolve(pf, pf);
    const std::vector<double> quad = convolve(pp, ff);

    long double acc = 0.0L;
    for (std::size_t k = 0; k < quad.size(); ++k) {
        const double theta = gap * (static_cast<double>(k) - 2.0 * (c.M - 1));
        acc += static_cast<long double>(std::cos(theta)) * quad[k];
    }
    return static_cast<double>(acc);
}

ContinuousThetaPdf continuous_theta_pdf(double delta, int grid_points) {
    if (!(delta > 0.0))
        throw std::invalid_argument("continuous_theta_pdf: phase half-range must be positive");
    if (grid_points < 64)
        throw std::invalid_argument("continuous_theta_pdf: need at least 64 grid points, got " +
                                    std::to_string(grid_points));

    // Discretize U[-delta, delta] into trapezoid-weighted point masses on an
    // endpoint lattice of spacing h, self-convolve four times, and rescale to
    // a density. The result spans exactly [-4 delta, 4 delta] and its second
    // moment matches 4 delta^2/3 to O(1/n^2).
    const int n = grid_points;
    const double h = 2.0 * delta / (n - 1);
    std::vector<double> base(static_cast<std::size_t>(n), 1.0 / (n - 1));
    base.front() = 0.5 / (n - 1);
    base.back() = 0.5 / (n - 1);

    std::vector<double> two = convolve(base, base);
    std::vector<double> four = convolve(two, two);

    ContinuousThetaPdf pdf;
    pdf.delta = delta;
    pdf.theta.resize(four.size());
    pdf.density.resize(four.size());
    const std::size_t mid = (four.size() - 1) / 2;  // the atom at theta = 0
    for (std::size_t k = 0; k < four.size(); ++k) {
        pdf.theta[k] = (static_cast<double>(k) - static_cast<double>(mid)) * h;
        pdf.density[k] = four[k] / h;  // mass -> density
    }
    return pdf;
}

GaussianTheta gaussian_theta_approx(double delta) {
    if (delta < 0.0)
        throw std::invalid_argument("gaussian_theta_approx: phase half-range must be nonnegative");
    return GaussianTheta{0.0, 4.0 * delta * delta / 3.0};
}

double expected_cos_continuous(double delta, CosMode mode) {
    if (delta < 0.0)
        throw std::invalid_argument("expected_cos_continuous: phase half-range must be nonnegative");
    if (mode == CosMode::gaussian)
        return std::exp(-2.0 * delta * delta / 3.0);
    if (delta == 0.0) return 1.0;
    const double sinc = std::sin(delta) / delta;  // E{e^{j Phi}} for Phi ~ U[-delta, delta]
    return sinc * sinc * sinc * sinc;
}

}  // namespace swipt
