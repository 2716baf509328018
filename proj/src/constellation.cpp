#include "swipt/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace swipt {

namespace {

constexpr double kPi = std::numbers::pi;

// delta is treated as the full-circle case when it is within one part in
// 1e12 of pi, so that values parsed from decimal text still select the
// symmetric branch.
bool delta_is_pi(double delta) { return std::abs(delta - kPi) < 1e-12; }

}  // namespace

bool is_symmetric(const Constellation& c) { return delta_is_pi(c.delta); }

double phase_gap(const Constellation& c) {
    return delta_is_pi(c.delta) ? 2.0 * kPi / c.M : 2.0 * c.delta / (c.M - 1);
}

Constellation build_constellation(int M, double delta, double amplitude) {
    if (M < 2 || M % 2 != 0)
        throw std::invalid_argument("build_constellation: symbol count must be even and at least 2, got " +
                                    std::to_string(M));
    if (!(delta > 0.0) || delta > kPi + 1e-12)
        throw std::invalid_argument("build_constellation: phase half-range must lie in (0, pi], got " +
                                    std::to_string(delta));
    if (amplitude < 0.0)
        throw std::invalid_argument("build_constellation: amplitude must be nonnegative");

    Constellation c;
    c.M = M;
    c.delta = delta_is_pi(delta) ? kPi : delta;
    c.amplitude = amplitude;
    c.phases.resize(static_cast<std::size_t>(M));

    // Both placements are equally spaced and symmetric about 0; they differ
    // only in the largest phase and the gap.
    const double phi_max = delta_is_pi(delta) ? (M - 1) * kPi / M : delta;
    const double gap = delta_is_pi(delta) ? 2.0 * kPi / M : 2.0 * delta / (M - 1);
    for (int m = 0; m < M; ++m)
        c.phases[static_cast<std::size_t>(m)] = phi_max - m * gap;
    return c;
}

SymbolPmf make_pmf(std::vector<double> probs) {
    SymbolPmf p{std::move(probs)};
    validate_pmf(p, p.size());
    return p;
}

SymbolPmf uniform_pmf(int M) {
    if (M < 1) throw std::invalid_argument("uniform_pmf: need at least one symbol");
    return SymbolPmf{std::vector<double>(static_cast<std::size_t>(M), 1.0 / M)};
}

SymbolPmf vertex_pmf(int M, int index) {
    if (M < 1 || index < 0 || index >= M)
        throw std::invalid_argument("vertex_pmf: symbol index out of range");
    SymbolPmf p{std::vector<double>(static_cast<std::size_t>(M), 0.0)};
    p[index] = 1.0;
    return p;
}

SymbolPmf flipped(const SymbolPmf& p) {
    SymbolPmf q = p;
    const int M = p.size();
    for (int i = 0; i < M; ++i) q[i] = p[M - 1 - i];
    return q;
}

void validate_pmf(const SymbolPmf& p, int M) {
    if (p.size() != M)
        throw std::invalid_argument("validate_pmf: expected " + std::to_string(M) + " probabilities, got " +
                                    std::to_string(p.size()));
    long double sum = 0.0L;
    for (int i = 0; i < p.size(); ++i) {
        const double v = p[i];
        if (!(v >= 0.0) || v > 1.0 + 1e-12)
            throw std::invalid_argument("validate_pmf: probability " + std::to_string(i) +
                                        " outside [0, 1]: " + std::to_string(v));
        sum += v;
    }
    if (std::abs(static_cast<double>(sum) - 1.0) > 1e-12)
        throw std::invalid_argument("validate_pmf: probabilities sum to " +
                                    std::to_string(static_cast<double>(sum)) + ", expected 1");
}

std::string to_json(const Constellation& c, const SymbolPmf& p) {
    nlohmann::json j;
    j["M"] = c.M;
    j["delta"] = c.delta;
    j["amplitude"] = c.amplitude;
    j["phases"] = c.phases;
    j["probs"] = p.probs;
    return j.dump();
}

void from_json(const std::string& text, Constellation& c, SymbolPmf& p) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("from_json: malformed document: ") + e.what());
    }
    if (!j.contains("M") || !j.contains("delta") || !j.contains("amplitude"))
        throw std::invalid_argument("from_json: missing one of M/delta/amplitude");
    c = build_constellation(j.at("M").get<int>(), j.at("delta").get<double>(),
                            j.at("amplitude").get<double>());
    if (j.contains("probs") && !j.at("probs").is_null()) {
        p = make_pmf(j.at("probs").get<std::vector<double>>());
        validate_pmf(p, c.M);
    } else {
        p = uniform_pmf(c.M);
    }
}

}  // namespace swipt
