#pragma once

#include <cstdint>
#include <vector>

#include "swipt/constellation.hpp"
#include "swipt/energy_model.hpp"
#include "swipt/info_rate.hpp"

namespace swipt {

// Exact gradient of the energy factor xi(p) obtained by differentiating the
// convolution p * p * p' * p' term by term.
std::vector<double> grad_xi(const SymbolPmf& p, const Constellation& c);

// Partial derivatives of the discretized output entropy; equals the rate
// constraint's gradient since the noise-entropy offset is constant.
std::vector<double> grad_entropy(const SymbolPmf& p, const OutputEntropy& entropy);
std::vector<double> grad_entropy(const SymbolPmf& p, const Constellation& c, const AwgnChannel& ch);

// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_to_simplex(std::vector<double> v);

// One point of the rate-energy boundary.
struct RegionPoint {
    double rate_bound = 0.0;     // requested per-subband rate R, bits
    double zdc = 0.0;            // amperes
    double xi = 0.0;
    SymbolPmf pmf;
    double achieved_rate = 0.0;  // bits, clamped mutual information at pmf
    bool converged = false;
    double kkt_residual = 0.0;   // inf-norm of the projected stationarity map
};

struct SolverOptions {
    double kkt_tol = 1e-6;       // projected stationarity target
    double feas_tol = 1e-8;      // rate-constraint violation target, bits
    int max_outer = 30;          // multiplier updates
    int max_inner = 400;         // projected-gradient steps per outer round
};

// Maximizes z_dc over the simplex subject to mutual information >= R via an
// augmented Lagrangian on the rate constraint, with a projected spectral
// gradient method (Barzilai-Borwein step, nonmonotone line search) for the
// inner minimizations. An unattainable R comes back converged = false.
RegionPoint solve_region_point(double R, const Constellation& c, const AwgnChannel& ch,
                               const EnergyParams& e, const SymbolPmf& init,
                               const SolverOptions& opt = {});
RegionPoint solve_region_point(double R, const Constellation& c, const OutputEntropy& entropy,
                               const EnergyParams& e, const SymbolPmf& init,
                               const SolverOptions& opt = {});

// Solves an ascending rate grid with warm starts, the first point seeded at
// the single-symbol vertex [0, 1, 0, ...].
std::vector<RegionPoint> sweep_region(const std::vector<double>& rate_grid, const Constellation& c,
                                      const AwgnChannel& ch, const EnergyParams& e,
                                      const SolverOptions& opt = {});

// Largest achievable mutual information over the simplex and its achieving
// pmf (concave maximization by the same projected gradient engine).
struct RateCeiling {
    double rate_bits = 0.0;
    SymbolPmf pmf;
};
RateCeiling max_mutual_information(const Constellation& c, const AwgnChannel& ch);
RateCeiling max_mutual_information(const Constellation& c, const OutputEntropy& entropy);

// Exhaustive lattice search over pmfs with entries on a grid of the given
// step: the feasible lattice point of maximal xi, ties broken toward the
// lexicographically largest pmf (so the lowest-index vertex wins at R = 0).
// Used as a global-optimality oracle. Throws when step does not divide 1 or
// the lattice exceeds max_points. If no lattice point is feasible, returns
// converged = false at the maximum-entropy lattice point.
RegionPoint esm_oracle(double R, const Constellation& c, const AwgnChannel& ch,
                       const EnergyParams& e, double step,
                       std::uint64_t max_points = 2000000);
RegionPoint esm_oracle(double R, const Constellation& c, const OutputEntropy& entropy,
                       const EnergyParams& e, double step,
                       std::uint64_t max_points = 2000000);

}  // namespace swipt
