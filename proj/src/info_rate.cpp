#include "swipt/info_rate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swipt/rng.hpp"

namespace swipt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2E = std::numbers::log2e;
// Floor applied inside log2 so that cells where the output density
// underflows contribute the correctly-signed huge-but-finite term instead
// of NaN; the true density is strictly positive everywhere.
constexpr double kDensityFloor = 1e-300;

double log2_pi_e() { return std::log2(kPi * std::numbers::e); }

// Gaussian upper-tail probability.
double q_function(double u) { return 0.5 * std::erfc(u / std::numbers::sqrt2); }

double wrap_angle(double a) {
    // remainder() lands in [-pi, pi] with the sign of the nearest multiple.
    return std::remainder(a, 2.0 * kPi);
}

void check_channel(const AwgnChannel& ch) {
    if (!(ch.gamma >= 0.0))
        throw std::invalid_argument("AwgnChannel: SNR must be nonnegative");
}

// Conditional phase density as a function of the wrapped offset from the
// transmitted symbol's phase.
double phase_offset_pdf(double d, double gamma) {
    const double c = std::cos(d);
    const double s = std::sin(d);
    return std::exp(-gamma) / (2.0 * kPi) +
           std::sqrt(gamma / kPi) * c * std::exp(-gamma * s * s) *
               (1.0 - q_function(std::sqrt(2.0 * gamma) * c));
}

// Recursive adaptive Simpson quadrature with absolute tolerance.
template <typename F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0)
        throw std::runtime_error("adaptive quadrature: recursion limit reached");
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double output_pdf(std::complex<double> y, const SymbolPmf& p, const Constellation& c,
                  const AwgnChannel& ch) {
    validate_pmf(p, c.M);
    check_channel(ch);
    const double s = std::sqrt(ch.gamma);
    double acc = 0.0;
    for (int m = 0; m < c.M; ++m) {
        const std::complex<double> x = std::polar(s, c.phases[static_cast<std::size_t>(m)]);
        acc += p[m] * std::exp(-std::norm(y - x));
    }
    return acc / kPi;
}

OutputEntropy::OutputEntropy(const Constellation& c, const AwgnChannel& ch) {
    check_channel(ch);
    M_ = c.M;
    gamma_ = ch.gamma;

    // Refine the Simpson level until the uniform-pmf entropy moves by less
    // than 1e-3 bits, then freeze the finer grid.
    const std::vector<double> uniform(static_cast<std::size_t>(M_), 1.0 / M_);
    build_grid(c, 129);
    double prev = entropy_at_level(uniform);
    for (int n = 257; n <= 2049; n = 2 * n - 1) {
        build_grid(c, n);
        const double cur = entropy_at_level(uniform);
        if (std::abs(cur - prev) < 1e-3) return;
        prev = cur;
    }
    throw std::runtime_error("OutputEntropy: quadrature did not settle within the grid-refinement cap");
}

void OutputEntropy::build_grid(const Constellation& c, int n) {
    n_ = n;
    const double L = std::sqrt(gamma_) + 5.0;
    const double h = 2.0 * L / (n - 1);

    std::vector<double> axis(static_cast<std::size_t>(n));
    std::vector<double> w1(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        axis[static_cast<std::size_t>(i)] = -L + i * h;
        const bool edge = (i == 0 || i == n - 1);
        w1[static_cast<std::size_t>(i)] = (edge ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0)) * h / 3.0;
    }

    const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    weights_.resize(cells);
    kernels_.resize(cells * static_cast<std::size_t>(M_));

    std::vector<std::complex<double>> x(static_cast<std::size_t>(M_));
    const double s = std::sqrt(gamma_);
    for (int m = 0; m < M_; ++m) x[static_cast<std::size_t>(m)] = std::polar(s, c.phases[static_cast<std::size_t>(m)]);

    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j, ++idx) {
            weights_[idx] = w1[static_cast<std::size_t>(i)] * w1[static_cast<std::size_t>(j)];
            const std::complex<double> y(axis[static_cast<std::size_t>(i)], axis[static_cast<std::size_t>(j)]);
            for (int m = 0; m < M_; ++m)
                kernels_[idx * static_cast<std::size_t>(M_) + static_cast<std::size_t>(m)] =
                    std::exp(-std::norm(y - x[static_cast<std::size_t>(m)]));
        }
    }
}

double OutputEntropy::entropy_at_level(const std::vector<double>& probs) const {
    const std::size_t cells = weights_.size();
    const std::size_t M = static_cast<std::size_t>(M_);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < cells; ++idx) {
        double py = 0.0;
        for (std::size_t m = 0; m < M; ++m) py += probs[m] * kernels_[idx * M + m];
        py /= kPi;
        if (py > 0.0) acc -= weights_[idx] * py * std::log2(std::max(py, kDensityFloor));
    }
    return acc;
}

// Accepts general nonnegative weights: finite-difference checks of the
// entropy gradient evaluate this slightly off the simplex, so only the
// length and sign are enforced here.
void OutputEntropy::check_weights(const SymbolPmf& p) const {
    if (p.size() != M_)
        throw std::invalid_argument("OutputEntropy: weight vector length must match the symbol count");
    for (int m = 0; m < M_; ++m)
        if (!(p[m] >= 0.0))
            throw std::invalid_argument("OutputEntropy: weights must be nonnegative");
}

double OutputEntropy::entropy_bits(const SymbolPmf& p) const {
    check_weights(p);
    return entropy_at_level(p.probs);
}

double OutputEntropy::mutual_information_raw_bits(const SymbolPmf& p) const {
    return entropy_bits(p) - log2_pi_e();
}

double OutputEntropy::mutual_information_bits(const SymbolPmf& p) const {
    return std::clamp(mutual_information_raw_bits(p), 0.0, std::log2(static_cast<double>(M_)));
}

std::vector<double> OutputEntropy::grad_entropy_bits(const SymbolPmf& p) const {
    check_weights(p);
    const std::size_t cells = weights_.size();
    const std::size_t M = static_cast<std::size_t>(M_);
    std::vector<double> g(M, 0.0);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        const double* kern = &kernels_[idx * M];
        double py = 0.0;
        for (std::size_t m = 0; m < M; ++m) py += p.probs[m] * kern[m];
        py /= kPi;
        const double t = weights_[idx] * (kLog2E + std::log2(std::max(py, kDensityFloor))) / kPi;
        for (std::size_t m = 0; m < M; ++m) g[m] -= t * kern[m];
    }
    return g;
}

double mutual_information(const SymbolPmf& p, const Constellation& c, const AwgnChannel& ch,
                          MiMethod method, std::uint64_t seed, long draws) {
    validate_pmf(p, c.M);
    check_channel(ch);
    if (method == MiMethod::quadrature)
        return OutputEntropy(c, ch).mutual_information_bits(p);

    if (draws < 1) throw std::invalid_argument("mutual_information: need at least one draw");
    // Average of log2 p(y|x)/p_Y(y) over simulated channel uses.
    const double s = std::sqrt(ch.gamma);
    std::vector<std::complex<double>> x(static_cast<std::size_t>(c.M));
    for (int m = 0; m < c.M; ++m) x[static_cast<std::size_t>(m)] = std::polar(s, c.phases[static_cast<std::size_t>(m)]);

    SplitMix64 rng(seed);
    long double acc = 0.0L;
    for (long i = 0; i < draws; ++i) {
        const double u = rng.uniform01();
        double cum = 0.0;
        int pick = c.M - 1;
        for (int m = 0; m < c.M; ++m) {
            cum += p[m];
            if (u < cum) {
                pick = m;
                break;
            }
        }
        // CN(0,1) noise via Box-Muller, 0.5 variance per real dimension.
        const double r = std::sqrt(-std::log(1.0 - rng.uniform01()));
        const double ang = 2.0 * kPi * rng.uniform01();
        const std::complex<double> z(r * std::cos(ang), r * std::sin(ang));
        const std::complex<double> y = x[static_cast<std::size_t>(pick)] + z;

        double py = 0.0;
        for (int m = 0; m < c.M; ++m) py += p[m] * std::exp(-std::norm(y - x[static_cast<std::size_t>(m)]));
        acc += -static_cast<long double>(std::norm(z)) * kLog2E -
               std::log2(std::max(py, kDensityFloor));
    }
    const double mi = static_cast<double>(acc / draws);
    return std::clamp(mi, 0.0, std::log2(static_cast<double>(c.M)));
}

double sum_rate(double bits_per_symbol, int carriers) {
    if (bits_per_symbol < 0.0)
        throw std::invalid_argument("sum_rate: rate must be nonnegative");
    if (carriers < 1)
        throw std::invalid_argument("sum_rate: need at least one carrier");
    return bits_per_symbol * carriers;
}

double phase_pdf(double phi, int m, const Constellation& c, const AwgnChannel& ch) {
    check_channel(ch);
    if (m < 0 || m >= c.M)
        throw std::invalid_argument("phase_pdf: symbol index out of range");
    return phase_offset_pdf(wrap_angle(phi - c.phases[static_cast<std::size_t>(m)]), ch.gamma);
}

DecisionRegions map_decision_regions(const SymbolPmf& p, const Constellation& c,
                                     const AwgnChannel& ch) {
    validate_pmf(p, c.M);
    check_channel(ch);
    const int M = c.M;

    std::vector<int> active;
    for (int m = 0; m < M; ++m)
        if (p[m] > 0.0) active.push_back(m);

    DecisionRegions out;
    out.intervals.assign(static_cast<std::size_t>(M), PhaseInterval{});
    for (int m = 0; m < M; ++m) {
        const double phi = c.phases[static_cast<std::size_t>(m)];
        out.intervals[static_cast<std::size_t>(m)] = PhaseInterval{phi, phi};  // empty until assigned
    }

    if (active.empty())
        throw std::invalid_argument("map_decision_regions: no symbol has positive probability");

    if (active.size() == 1) {
        const double phi = c.phases[static_cast<std::size_t>(active.front())];
        out.intervals[static_cast<std::size_t>(active.front())] = PhaseInterval{phi - kPi, phi + kPi};
        return out;
    }

    // Weighted posterior difference between two symbols at absolute phase u;
    // the second symbol's phase may be passed shifted by 2 pi for the wrap
    // segment since the density only sees the wrapped offset.
    const auto posterior_diff = [&](int a, int b, double u) {
        return p[a] * phase_offset_pdf(wrap_angle(u - c.phases[static_cast<std::size_t>(a)]), ch.gamma) -
               p[b] * phase_offset_pdf(wrap_angle(u - c.phases[static_cast<std::size_t>(b)]), ch.gamma);
    };

    // Bisection for the crossing of posterior_diff(a, b, u) on [lo, hi],
    // positive near hi (symbol a side) and negative near lo. A missing sign
    // change hands the whole arc to the dominant side and clears the flag.
    const auto crossing = [&](int a, int b, double lo, double hi) {
        double flo = posterior_diff(a, b, lo);
        double fhi = posterior_diff(a, b, hi);
        if (flo >= 0.0 && fhi >= 0.0) {
            out.all_roots_found = false;
            return lo;  // a dominates the whole arc
        }
        if (flo <= 0.0 && fhi <= 0.0) {
            out.all_roots_found = false;
            return hi;  // b dominates the whole arc
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = posterior_diff(a, b, mid);
            if (fm > 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    const std::size_t A = active.size();
    // Interior boundaries: between active[i] (higher phase) and active[i+1].
    std::vector<double> bound(A - 1);
    for (std::size_t i = 0; i + 1 < A; ++i)
        bound[i] = crossing(active[i], active[i + 1], c.phases[static_cast<std::size_t>(active[i + 1])],
                            c.phases[static_cast<std::size_t>(active[i])]);

    // Wrap boundary through the antipodal gap, parameterized on
    // [phi_first, phi_last + 2 pi].
    const double phi_first = c.phases[static_cast<std::size_t>(active.front())];
    const double phi_last = c.phases[static_cast<std::size_t>(active.back())];
    const double wrap_b = crossing(active.back(), active.front(), phi_first, phi_last + 2.0 * kPi);

    for (std::size_t i = 0; i < A; ++i) {
        double lo, hi;
        if (i == 0) {
            lo = bound[0];
            hi = wrap_b;
        } else if (i + 1 == A) {
            lo = wrap_b - 2.0 * kPi;
            hi = bound[A - 2];
        } else {
            lo = bound[i];
            hi = bound[i - 1];
        }
        out.intervals[static_cast<std::size_t>(active[i])] = PhaseInterval{lo, hi};
    }
    return out;
}

DmcChannel transition_matrix(const SymbolPmf& p, const Constellation& c, const AwgnChannel& ch) {
    DmcChannel dmc;
    dmc.regions = map_decision_regions(p, c, ch);

    const int M = c.M;
    dmc.transitions.assign(static_cast<std::size_t>(M),
                           std::vector<double>(static_cast<std::size_t>(M), 0.0));
    for (int m = 0; m < M; ++m) {
        const double phi_m = c.phases[static_cast<std::size_t>(m)];
        auto& row = dmc.transitions[static_cast<std::size_t>(m)];
        for (int l = 0; l < M; ++l) {
            const PhaseInterval& arc = dmc.regions.intervals[static_cast<std::size_t>(l)];
            if (arc.width() <= 0.0) continue;
            // At high SNR the conditional density is a narrow spike at phi_m
            // that blind dyadic sampling can step over entirely, so cut the
            // arc at the spike's center (modulo 2 pi) before integrating.
            std::vector<double> cuts{arc.lo};
            for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
                const double x = phi_m + shift;
                if (x > arc.lo && x < arc.hi) cuts.push_back(x);
            }
            cuts.push_back(arc.hi);
            std::sort(cuts.begin(), cuts.end());
            double mass = 0.0;
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
                mass += adaptive_simpson(
                    [&](double u) { return phase_offset_pdf(wrap_angle(u - phi_m), ch.gamma); },
                    cuts[k], cuts[k + 1], 1e-10);
            row[static_cast<std::size_t>(l)] = mass;
        }
        double sum = 0.0;
        for (double v : row) sum += v;
        if (std::abs(sum - 1.0) >= 1e-8)
            throw std::runtime_error("transition_matrix: row mass drifted from 1 beyond tolerance");
        for (double& v : row) v /= sum;
    }
    return dmc;
}

BaResult blahut_arimoto(const DmcChannel& dmc, double tol, int max_iter) {
    const std::size_t M = dmc.transitions.size();
    if (M == 0) throw std::invalid_argument("blahut_arimoto: empty channel");
    for (const auto& row : dmc.transitions)
        if (row.size() != M)
            throw std::invalid_argument("blahut_arimoto: transition matrix must be square");
    if (!(tol > 0.0)) throw std::invalid_argument("blahut_arimoto: tolerance must be positive");

    std::vector<double> p(M, 1.0 / static_cast<double>(M));
    std::vector<double> r(M), growth(M);
    for (int it = 1; it <= max_iter; ++it) {
        for (std::size_t l = 0; l < M; ++l) {
            double acc = 0.0;
            for (std::size_t m = 0; m < M; ++m) acc += p[m] * dmc.transitions[m][l];
            r[l] = acc;
        }
        // growth[m] = exp(KL(W_m || r)) in nats.
        double best = 0.0;
        double mean = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            double kl = 0.0;
            for (std::size_t l = 0; l < M; ++l) {
                const double w = dmc.transitions[m][l];
                if (w > 0.0) kl += w * std::log(w / r[l]);
            }
            growth[m] = std::exp(kl);
            best = std::max(best, growth[m]);
            mean += p[m] * growth[m];
        }
        const double lower = std::log2(mean);
        const double upper = std::log2(best);
        if (upper - lower < tol) {
            BaResult res;
            res.capacity_bits = lower;
            res.p_opt = SymbolPmf{p};
            res.iterations = it;
            // Tidy the simplex after repeated renormalization.
            double s = 0.0;
            for (double v : res.p_opt.probs) s += v;
            for (double& v : res.p_opt.probs) v /= s;
            return res;
        }
        for (std::size_t m = 0; m < M; ++m) p[m] *= growth[m] / mean;
    }
    throw std::runtime_error("blahut_arimoto: no convergence within iteration limit");
}

}  // namespace swipt
