#include "swipt/rate_energy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "swipt/phase_stats.hpp"

namespace swipt {

namespace {

// Direct convolution in extended precision (double result).
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<long double> acc(a.size() + b.size() - 1, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] += static_cast<long double>(a[i]) * b[j];
    std::vector<double> out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<double>(acc[k]);
    return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(acc);
}

double inf_norm(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

// Projected spectral gradient minimizer on the probability simplex:
// Barzilai-Borwein steps safeguarded by a nonmonotone Armijo search over the
// last 10 objective values. Returns the iterate; stops on the projected
// first-order optimality measure.
std::vector<double> spg_minimize(const std::function<double(const std::vector<double>&)>& value,
                                 const std::function<std::vector<double>(const std::vector<double>&)>& grad,
                                 std::vector<double> p, int max_iter, double tol) {
    const std::size_t M = p.size();
    p = project_to_simplex(std::move(p));
    double f = value(p);
    std::vector<double> g = grad(p);
    double alpha = 1.0;
    std::vector<double> recent_f{f};

    std::vector<double> trial(M), d(M), pn(M), gn(M);
    for (int it = 0; it < max_iter; ++it) {
        // Optimality: the projected gradient step must leave p unchanged.
        for (std::size_t i = 0; i < M; ++i) trial[i] = p[i] - g[i];
        trial = project_to_simplex(std::move(trial));
        double crit = 0.0;
        for (std::size_t i = 0; i < M; ++i) crit = std::max(crit, std::abs(trial[i] - p[i]));
        if (crit < tol) break;

        for (std::size_t i = 0; i < M; ++i) trial[i] = p[i] - alpha * g[i];
        trial = project_to_simplex(std::move(trial));
        for (std::size_t i = 0; i < M; ++i) d[i] = trial[i] - p[i];
        const double gtd = dot(g, d);
        if (gtd > -1e-18) break;  // no descent along the projected arc

        double fref = *std::max_element(recent_f.begin(), recent_f.end());
        double t = 1.0;
        double fn = 0.0;
        while (true) {
            // Clamp at 0: the exact convex combination is nonnegative, but
            // rounding may produce a negative denormal.
            for (std::size_t i = 0; i < M; ++i) pn[i] = std::max(0.0, p[i] + t * d[i]);
            fn = value(pn);
            if (fn <= fref + 1e-4 * t * gtd || t < 1e-14) break;
            t *= 0.5;
        }
        gn = grad(pn);

        // BB step from the accepted displacement.
        double ss = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            const double si = pn[i] - p[i];
            ss += si * si;
            sy += si * (gn[i] - g[i]);
        }
        alpha = (sy > 1e-18) ? std::clamp(ss / sy, 1e-8, 1e8) : 1.0;

        p.swap(pn);
        f = fn;
        g.swap(gn);
        recent_f.push_back(f);
        if (recent_f.size() > 10) recent_f.erase(recent_f.begin());
    }
    return p;
}

SymbolPmf as_pmf(std::vector<double> v) {
    // Iterates live on the simplex by construction (projection); tidy the
    // last few ulps so downstream validation at 1e-12 never trips.
    long double s = 0.0L;
    for (double x : v) s += x;
    for (double& x : v) x = static_cast<double>(x / s);
    return SymbolPmf{std::move(v)};
}

}  // namespace

std::vector<double> grad_xi(const SymbolPmf& p, const Constellation& c) {
    validate_pmf(p, c.M);
    const int M = c.M;
    const double gap = phase_gap(c);

    // cos(theta_k) on the 4(M-1)+1 atoms of Theta.
    const int K = 4 * (M - 1) + 1;
    std::vector<double> ct(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        ct[static_cast<std::size_t>(k)] = std::cos(gap * (k - 2 * (M - 1)));

    // d pbar / d p_m splits into a shift of p*p'*p' (direct occurrences)
    // and a shift of p*p*p' (occurrences through the flipped copies).
    const std::vector<double> pf = flipped(p).probs;
    const std::vector<double> q1 = convolve(convolve(p.probs, pf), pf);
    const std::vector<double> q2 = convolve(convolve(p.probs, p.probs), pf);
    const int Q = static_cast<int>(q1.size());  // 3M - 2

    std::vector<double> g(static_cast<std::size_t>(M), 0.0);
    for (int m = 0; m < M; ++m) {
        long double acc = 0.0L;
        for (int i = 0; i < Q; ++i) {
            acc += 2.0L * static_cast<long double>(ct[static_cast<std::size_t>(i + m)]) *
                   q1[static_cast<std::size_t>(i)];
            acc += 2.0L * static_cast<long double>(ct[static_cast<std::size_t>(i + M - 1 - m)]) *
                   q2[static_cast<std::size_t>(i)];
        }
        g[static_cast<std::size_t>(m)] = static_cast<double>(acc);
    }
    return g;
}

std::vector<double> grad_entropy(const SymbolPmf& p, const OutputEntropy& entropy) {
    return entropy.grad_entropy_bits(p);
}

std::vector<double> grad_entropy(const SymbolPmf& p, const Constellation& c, const AwgnChannel& ch) {
    return OutputEntropy(c, ch).grad_entropy_bits(p);
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    const std::size_t n = v.size();
    if (n == 0) throw std::invalid_argument("project_to_simplex: empty vector");
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    long double css = 0.0L;
    long double tau = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
        css += u[j];
        const long double cand = (css - 1.0L) / static_cast<long double>(j + 1);
        if (u[j] - cand > 0.0L) tau = cand;  // largest prefix keeping u_j above the threshold
    }
    for (double& x : v) x = std::max(0.0, x - static_cast<double>(tau));
    return v;
}

RegionPoint solve_region_point(double R, const Constellation& c, const AwgnChannel& ch,
                               const EnergyParams& e, const SymbolPmf& init,
                               const SolverOptions& opt) {
    const OutputEntropy entropy(c, ch);
    return solve_region_point(R, c, entropy, e, init, opt);
}

RegionPoint solve_region_point(double R, const Constellation& c, const OutputEntropy& entropy,
                               const EnergyParams& e, const SymbolPmf& init,
                               const SolverOptions& opt) {
    if (R < 0.0 || R > std::log2(static_cast<double>(c.M)) + 1e-9)
        throw std::invalid_argument("solve_region_point: rate bound outside [0, log2 M]");
    validate_pmf(init, c.M);
    if (entropy.symbol_count() != c.M)
        throw std::invalid_argument("solve_region_point: entropy engine built for a different constellation");

    const auto mi_raw = [&](const std::vector<double>& q) {
        return entropy.mutual_information_raw_bits(SymbolPmf{q});
    };
    const auto xi_of = [&](const std::vector<double>& q) { return xi(SymbolPmf{q}, c); };

    double lam = 0.0;
    double mu = 10.0;
    std::vector<double> p = project_to_simplex(init.probs);
    double prev_viol = std::numeric_limits<double>::infinity();
    double kkt = std::numeric_limits<double>::infinity();
    double viol = std::numeric_limits<double>::infinity();
    bool converged = false;

    for (int outer = 0; outer < opt.max_outer; ++outer) {
        // Augmented-Lagrangian subproblem for maximize xi s.t. mi >= R:
        // minimize -xi + (t^2 - lam^2)/(2 mu), t = max(0, lam + mu (R - mi)).
        const auto value = [&](const std::vector<double>& q) {
            const double cviol = R - mi_raw(q);
            const double t = std::max(0.0, lam + mu * cviol);
            return -xi_of(q) + (t * t - lam * lam) / (2.0 * mu);
        };
        const auto grad = [&](const std::vector<double>& q) {
            const double cviol = R - mi_raw(q);
            const double t = std::max(0.0, lam + mu * cviol);
            std::vector<double> g = grad_xi(SymbolPmf{q}, c);
            for (double& v : g) v = -v;
            if (t > 0.0) {
                const std::vector<double> gh = entropy.grad_entropy_bits(SymbolPmf{q});
                for (std::size_t i = 0; i < g.size(); ++i) g[i] -= t * gh[i];
            }
            return g;
        };

        p = spg_minimize(value, grad, p, opt.max_inner, std::max(opt.kkt_tol * 0.01, 1e-11));

        const double cviol = R - mi_raw(p);
        lam = std::max(0.0, lam + mu * cviol);
        viol = std::max(0.0, cviol);

        // Stationarity of the maximization Lagrangian xi + lam (mi - R).
        std::vector<double> gl = grad_xi(SymbolPmf{p}, c);
        if (lam > 0.0) {
            const std::vector<double> gh = entropy.grad_entropy_bits(SymbolPmf{p});
            for (std::size_t i = 0; i < gl.size(); ++i) gl[i] += lam * gh[i];
        }
        std::vector<double> stat(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) stat[i] = p[i] + gl[i];
        stat = project_to_simplex(std::move(stat));
        for (std::size_t i = 0; i < p.size(); ++i) stat[i] -= p[i];
        kkt = inf_norm(stat);

        const double comp = std::abs(lam * cviol);
        if (kkt < opt.kkt_tol && viol < opt.feas_tol && comp < 1e-6) {
            converged = true;
            break;
        }
        if (viol > 0.25 * prev_viol && viol > opt.feas_tol) mu *= 10.0;
        prev_viol = std::max(viol, 1e-300);
        // A runaway penalty with persistent violation means R is unreachable.
        if (mu > 1e13 && viol > opt.feas_tol) break;
    }

    RegionPoint pt;
    pt.rate_bound = R;
    pt.pmf = as_pmf(p);
    pt.xi = std::clamp(xi(pt.pmf, c), -1.0, 1.0);
    pt.zdc = scaling_discrete(pt.xi, e);
    pt.achieved_rate = entropy.mutual_information_bits(pt.pmf);
    pt.converged = converged;
    pt.kkt_residual = kkt;
    return pt;
}

std::vector<RegionPoint> sweep_region(const std::vector<double>& rate_grid, const Constellation& c,
                                      const AwgnChannel& ch, const EnergyParams& e,
                                      const SolverOptions& opt) {
    for (std::size_t i = 1; i < rate_grid.size(); ++i)
        if (rate_grid[i] < rate_grid[i - 1])
            throw std::invalid_argument("sweep_region: rate grid must be ascending");

    const OutputEntropy entropy(c, ch);
    std::vector<RegionPoint> out;
    out.reserve(rate_grid.size());
    SymbolPmf start = vertex_pmf(c.M, 1);  // dominant-inner-symbol vertex
    for (double R : rate_grid) {
        RegionPoint pt = solve_region_point(R, c, entropy, e, start, opt);
        if (pt.converged) start = pt.pmf;  // warm start the next point
        out.push_back(std::move(pt));
    }
    return out;
}

RateCeiling max_mutual_information(const Constellation& c, const AwgnChannel& ch) {
    const OutputEntropy entropy(c, ch);
    return max_mutual_information(c, entropy);
}

RateCeiling max_mutual_information(const Constellation& c, const OutputEntropy& entropy) {
    const auto value = [&](const std::vector<double>& q) {
        return -entropy.mutual_information_raw_bits(SymbolPmf{q});
    };
    const auto grad = [&](const std::vector<double>& q) {
        std::vector<double> g = entropy.grad_entropy_bits(SymbolPmf{q});
        for (double& v : g) v = -v;
        return g;
    };
    std::vector<double> p = spg_minimize(value, grad, uniform_pmf(c.M).probs, 2000, 1e-10);
    RateCeiling out;
    out.pmf = as_pmf(p);
    out.rate_bits = entropy.mutual_information_bits(out.pmf);
    return out;
}

RegionPoint esm_oracle(double R, const Constellation& c, const AwgnChannel& ch,
                       const EnergyParams& e, double step, std::uint64_t max_points) {
    const OutputEntropy entropy(c, ch);
    return esm_oracle(R, c, entropy, e, step, max_points);
}

RegionPoint esm_oracle(double R, const Constellation& c, const OutputEntropy& entropy,
                       const EnergyParams& e, double step, std::uint64_t max_points) {
    if (!(step > 0.0) || step > 1.0)
        throw std::invalid_argument("esm_oracle: step must lie in (0, 1]");
    const long long K = std::llround(1.0 / step);
    if (std::abs(K * step - 1.0) > 1e-9)
        throw std::invalid_argument("esm_oracle: step must divide 1");

    const int M = c.M;
    // Lattice size C(K+M-1, M-1); refuse oversized grids up front.
    double count = 1.0;
    for (int i = 1; i < M; ++i) count *= static_cast<double>(K + i) / i;
    if (count > static_cast<double>(max_points))
        throw std::invalid_argument("esm_oracle: lattice of " + std::to_string(count) +
                                    " points exceeds the cap");

    // Enumerate all compositions of K into M parts.
    std::vector<std::vector<double>> lattice;
    lattice.reserve(static_cast<std::size_t>(count) + 1);
    std::vector<long long> comp(static_cast<std::size_t>(M), 0);
    const std::function<void(int, long long)> emit = [&](int slot, long long left) {
        if (slot == M - 1) {
            comp[static_cast<std::size_t>(slot)] = left;
            std::vector<double> q(static_cast<std::size_t>(M));
            for (int i = 0; i < M; ++i)
                q[static_cast<std::size_t>(i)] =
                    static_cast<double>(comp[static_cast<std::size_t>(i)]) / static_cast<double>(K);
            lattice.push_back(std::move(q));
            return;
        }
        for (long long v = left; v >= 0; --v) {
            comp[static_cast<std::size_t>(slot)] = v;
            emit(slot + 1, left - v);
        }
    };
    emit(0, K);

    // Walk in decreasing xi (lexicographically largest pmf first on ties) and
    // return the first rate-feasible point; the input-entropy bound H(p) >= R
    // prunes hopeless candidates before the expensive integral.
    std::vector<double> xis(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i) xis[i] = xi(SymbolPmf{lattice[i]}, c);
    std::vector<std::size_t> order(lattice.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (xis[a] != xis[b]) return xis[a] > xis[b];
        return lattice[a] > lattice[b];
    });

    const auto input_entropy = [](const std::vector<double>& q) {
        double h = 0.0;
        for (double v : q)
            if (v > 0.0) h -= v * std::log2(v);
        return h;
    };

    const double max_rate = std::log2(static_cast<double>(M));
    const auto finish = [&](std::size_t idx, double mi_raw, bool ok) {
        RegionPoint pt;
        pt.rate_bound = R;
        pt.pmf = SymbolPmf{lattice[idx]};
        pt.xi = std::clamp(xis[idx], -1.0, 1.0);
        pt.zdc = scaling_discrete(pt.xi, e);
        pt.achieved_rate = std::clamp(mi_raw, 0.0, max_rate);
        pt.converged = ok;
        pt.kkt_residual = std::numeric_limits<double>::quiet_NaN();  // not a gradient method
        return pt;
    };

    for (std::size_t idx : order) {
        if (input_entropy(lattice[idx]) < R - 1e-9) continue;
        const double mi = entropy.mutual_information_raw_bits(SymbolPmf{lattice[idx]});
        if (mi >= R - 1e-9) return finish(idx, mi, true);
    }

    // Nothing feasible: report the most-entropic lattice point as diagnostic.
    std::size_t best = 0;
    for (std::size_t i = 1; i < lattice.size(); ++i)
        if (input_entropy(lattice[i]) > input_entropy(lattice[best])) best = i;
    return finish(best, entropy.mutual_information_raw_bits(SymbolPmf{lattice[best]}), false);
}

}  // namespace swipt
