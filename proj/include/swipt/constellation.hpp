#pragma once

#include <string>
#include <vector>

namespace swipt {

// M-ary PSK constellation restricted to the phase arc [-delta, +delta]
// when delta < pi, or placed on the standard full circle when delta = pi.
// Phases are stored in strictly decreasing order: index 0 carries the
// largest phase, index M-1 the smallest. For M = 4 this makes indices
// 0 and 3 the outer symbols and 1 and 2 the inner ones.
struct Constellation {
    int M = 0;                   // symbol count, even, >= 2
    double delta = 0.0;          // phase half-range in radians, (0, pi]
    double amplitude = 0.0;      // sqrt(SNR) in rate work, sqrt(2P/N) in waveforms
    std::vector<double> phases;  // strictly decreasing, symmetric about 0
};

// True when the constellation uses the full-circle (delta = pi) placement.
bool is_symmetric(const Constellation& c);

// Equal spacing between adjacent phases: 2*delta/(M-1) for the arc
// placement, 2*pi/M on the full circle.
double phase_gap(const Constellation& c);

// Builds the canonical constellation. The arc placement puts symbols at
// +/-(2m+1)*delta/(M-1); the full-circle placement at +/-(2m+1)*pi/M.
// Throws std::invalid_argument on odd or sub-2 M, or delta outside (0, pi].
Constellation build_constellation(int M, double delta, double amplitude = 1.0);

// Probability mass function over the M symbols: the design variable of the
// rate-energy optimization.
struct SymbolPmf {
    std::vector<double> probs;

    int size() const { return static_cast<int>(probs.size()); }
    double operator[](int i) const { return probs[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return probs[static_cast<std::size_t>(i)]; }
};

// Validates entries in [0,1] and unit sum within 1e-12; throws
// std::invalid_argument otherwise.
SymbolPmf make_pmf(std::vector<double> probs);

SymbolPmf uniform_pmf(int M);

// Point mass on symbol `index`.
SymbolPmf vertex_pmf(int M, int index);

// Index-reversed copy: entry i of the result is entry M-1-i of the input.
SymbolPmf flipped(const SymbolPmf& p);

// Checks that p is a valid pmf of length M; throws std::invalid_argument.
void validate_pmf(const SymbolPmf& p, int M);

// JSON round-trip of the pair {M, delta, amplitude, phases[], probs[]}
// used by the command-line front end.
std::string to_json(const Constellation& c, const SymbolPmf& p);
void from_json(const std::string& text, Constellation& c, SymbolPmf& p);

}  // namespace swipt
