#include "swipt/energy_model.hpp"

#include <cmath>
#include <stdexcept>

namespace swipt {

DiodeParams default_diode() { return DiodeParams{5e-6, 1.05, 25.86e-3}; }

std::vector<double> taylor_coefficients(const DiodeParams& d, double a, int order) {
    if (!(d.i_s > 0.0) || !(d.n > 0.0) || !(d.v_t > 0.0))
        throw std::invalid_argument("taylor_coefficients: diode parameters must be strictly positive");
    if (order < 2)
        throw std::invalid_argument("taylor_coefficients: expansion order must be at least 2, got " +
                                    std::to_string(order));

    const double nvt = d.n * d.v_t;
    const double bias_gain = std::exp(a / nvt);
    std::vector<double> k(static_cast<std::size_t>(order) + 1);
    k[0] = d.i_s * (bias_gain - 1.0);
    // k_i = i_s e^{a/nvt} / (i! nvt^i); build by the recurrence
    // k_{i+1} = k_i / ((i+1) nvt).
    double coeff = d.i_s * bias_gain;
    for (int i = 1; i <= order; ++i) {
        coeff /= i * nvt;
        k[static_cast<std::size_t>(i)] = coeff;
    }
    return k;
}

EnergyParams make_energy_params(const DiodeParams& d, double rs, double power_watts, int carriers) {
    if (!(rs > 0.0)) throw std::invalid_argument("make_energy_params: antenna resistance must be positive");
    if (!(power_watts > 0.0)) throw std::invalid_argument("make_energy_params: average power must be positive");
    if (carriers < 1) throw std::invalid_argument("make_energy_params: need at least one carrier");
    const std::vector<double> k = taylor_coefficients(d, 0.0, 4);
    return EnergyParams{k[2], k[4], rs, power_watts, carriers};
}

double zdc_from_moments(double m2, double m4, const EnergyParams& e) {
    if (m2 < 0.0 || m4 < 0.0)
        throw std::invalid_argument("zdc_from_moments: moments must be nonnegative");
    return e.k2 * e.rs * m2 + e.k4 * e.rs * e.rs * m4;
}

double scaling_continuous(double delta, const EnergyParams& e) {
    if (delta < 0.0)
        throw std::invalid_argument("scaling_continuous: phase half-range must be nonnegative");
    return scaling_discrete(std::exp(-2.0 * delta * delta / 3.0), e);
}

double scaling_discrete(double xi, const EnergyParams& e) {
    if (xi < -1.0 - 1e-12 || xi > 1.0 + 1e-12)
        throw std::invalid_argument("scaling_discrete: energy factor must lie in [-1, 1], got " +
                                    std::to_string(xi));
    const double N = e.carriers;
    const double fourth = (2.0 * N * N + 1.0) / (2.0 * N) * e.power * e.power * xi;
    return e.k2 * e.rs * e.power + e.k4 * e.rs * e.rs * fourth;
}

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watts_to_dbm(double watts) {
    if (!(watts > 0.0))
        throw std::invalid_argument("watts_to_dbm: power must be strictly positive");
    return 10.0 * std::log10(watts / 1e-3);
}

}  // namespace swipt
