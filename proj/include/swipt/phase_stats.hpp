#pragma once

#include <vector>

#include "swipt/constellation.hpp"

namespace swipt {

// Distribution of the phase combination Theta = Phi0 + Phi1 - Phi2 - Phi3
// for four independent symbol draws from the same pmf. The support has
// 4(M-1)+1 equally spaced atoms, symmetric about 0.
struct ThetaDistribution {
    std::vector<double> support;  // radians, ascending
    std::vector<double> probs;    // nonnegative, sum 1 within 1e-12
};

// Atom probabilities via the discrete convolution p * p * p' * p', where
// p' is the index-flipped pmf. Throws on pmf/constellation size mismatch.
ThetaDistribution theta_pmf(const SymbolPmf& p, const Constellation& c);

// Energy factor xi = E{cos Theta} = sum_k cos(theta_k) Pr(Theta = theta_k),
// always computed through the convolution path above (the same quartic form
// the optimizer differentiates), never a shortcut identity. Accepts general
// nonnegative weight vectors so finite-difference checks can evaluate it
// slightly off the simplex.
double xi(const SymbolPmf& p, const Constellation& c);

// Four-fold self-convolution of the uniform density on [-delta, delta],
// sampled on an equispaced grid over [-4 delta, 4 delta] and normalized.
struct ContinuousThetaPdf {
    double delta = 0.0;
    std::vector<double> theta;    // grid points, radians
    std::vector<double> density;  // integrates to 1 within 1e-6
};

// Throws if grid_points < 64 (too coarse for the normalization guarantee).
ContinuousThetaPdf continuous_theta_pdf(double delta, int grid_points);

// Normal approximation Theta ~ N(0, 4 delta^2 / 3).
struct GaussianTheta {
    double mean = 0.0;
    double variance = 0.0;
};
GaussianTheta gaussian_theta_approx(double delta);

// E{cos Theta} for continuous phases Phi ~ U[-delta, delta]:
//   gaussian - exp(-2 delta^2 / 3), the normal-approximation value;
//   exact    - (sin(delta)/delta)^4, the characteristic-function value.
enum class CosMode { gaussian, exact };
double expected_cos_continuous(double delta, CosMode mode);

}  // namespace swipt
