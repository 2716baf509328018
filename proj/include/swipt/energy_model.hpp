#pragma once

#include <vector>

namespace swipt {

// Shockley diode small-signal parameters used to derive the rectifier's
// Taylor coefficients.
struct DiodeParams {
    double i_s = 0.0;  // reverse-bias saturation current, A
    double n = 0.0;    // ideality factor, dimensionless
    double v_t = 0.0;  // thermal voltage, V
};

// The low-power Schottky diode the default energy model is built on:
// i_s = 5 uA, n = 1.05, v_t = 25.86 mV.
DiodeParams default_diode();

// Taylor coefficients k_0..k_order of the diode current about bias a:
// k_0 = i_s (e^{a/(n v_t)} - 1), k_i = i_s e^{a/(n v_t)} / (i! (n v_t)^i).
// Throws on non-positive diode parameters or order < 2.
std::vector<double> taylor_coefficients(const DiodeParams& d, double a, int order);

// Everything needed to turn waveform moments into the harvested-current
// metric z_dc = k2 Rs m2 + k4 Rs^2 m4 (amperes). The model is truncated at
// fourth order throughout.
struct EnergyParams {
    double k2 = 0.0;     // A/V^2
    double k4 = 0.0;     // A/V^4
    double rs = 50.0;    // antenna resistance, ohms
    double power = 0.0;  // average RF power P, W
    int carriers = 1;    // carrier count N
};

// EnergyParams with k2/k4 from the diode Taylor expansion at zero bias.
// rs defaults to the standard 50-ohm antenna resistance.
EnergyParams make_energy_params(const DiodeParams& d, double rs, double power_watts, int carriers);

// z_dc from measured second and fourth moments of the received voltage.
double zdc_from_moments(double m2, double m4, const EnergyParams& e);

// Closed-form z_dc for N carriers with i.i.d. continuous phases
// Phi ~ U[-delta, delta]:
//   k2 Rs P + k4 Rs^2 ((2N^2+1)/(2N)) P^2 e^{-2 delta^2/3}.
double scaling_continuous(double delta, const EnergyParams& e);

// Same law with the Gaussian factor replaced by the discrete-constellation
// energy factor xi = E{cos Theta}.
double scaling_discrete(double xi, const EnergyParams& e);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);  // throws on non-positive watts

}  // namespace swipt
