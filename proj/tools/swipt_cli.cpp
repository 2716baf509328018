// Command-line front end: emits reproducible CSV datasets for the scaling
// law, mutual-information curves, rate-energy boundaries, lattice-search
// baselines, Theta distributions, and gradient diagnostics.
//
// Every output starts with a '#'-prefixed JSON manifest line recording the
// effective command (minus --out), seed, and version, so any run can be
// reproduced byte-for-byte by re-executing the recorded command.
//
// Exit codes: 0 success, 2 validation/usage error, 3 numerical
// non-convergence (the CSV is still written, with converged=0 rows).

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "swipt/constellation.hpp"
#include "swipt/energy_model.hpp"
#include "swipt/info_rate.hpp"
#include "swipt/phase_stats.hpp"
#include "swipt/rate_energy.hpp"
#include "swipt/rng.hpp"
#include "swipt/waveform_sim.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";
constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Small shared plumbing
// ---------------------------------------------------------------------------

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }

// Angles accept plain radians ("0.5236") or multiples of pi ("pi", "pi/6",
// "2pi/3", "0.5pi").
double parse_angle(const std::string& text) {
    const auto bad = [&]() {
        return std::invalid_argument("could not parse angle '" + text + "'");
    };
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw bad();

    const std::size_t at = s.find("pi");
    double value = 0.0;
    std::size_t tail = 0;
    if (at == std::string::npos) {
        value = std::stod(s, &tail);
        if (tail != s.size()) throw bad();
        return value;
    }

    const std::string head = s.substr(0, at);
    double coeff = 1.0;
    if (!head.empty()) {
        if (head == "-") {
            coeff = -1.0;
        } else {
            coeff = std::stod(head, &tail);
            if (tail != head.size()) throw bad();
        }
    }
    value = coeff * kPi;

    const std::string rest = s.substr(at + 2);
    if (!rest.empty()) {
        if (rest.front() != '/') throw bad();
        const std::string den = rest.substr(1);
        const double d = std::stod(den, &tail);
        if (tail != den.size() || d == 0.0) throw bad();
        value /= d;
    }
    return value;
}

// "start:stop:steps" -> inclusive linear grid.
std::vector<double> parse_grid(const std::string& text) {
    double a = 0.0, b = 0.0;
    int k = 0;
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::invalid_argument("grid must look like start:stop:steps, got '" + text + "'");
    try {
        a = std::stod(text.substr(0, first));
        b = std::stod(text.substr(first + 1, second - first - 1));
        k = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must look like start:stop:steps, got '" + text + "'");
    }
    if (k < 1) throw std::invalid_argument("grid needs at least one step");
    if (b < a) throw std::invalid_argument("grid stop must not precede start");
    std::vector<double> g(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        g[static_cast<std::size_t>(i)] = (k == 1) ? a : a + (b - a) * i / (k - 1);
    return g;
}

swipt::DiodeParams parse_diode(const std::string& text) {
    swipt::DiodeParams d = swipt::default_diode();
    if (text.empty()) return d;
    double is = 0.0, n = 0.0, vt = 0.0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &is, &n, &vt) != 3)
        throw std::invalid_argument("--diode expects is,n,vt (three comma-separated numbers)");
    return swipt::DiodeParams{is, n, vt};
}

// The manifest echoes the user's arguments minus --out/-o so that re-running
// the recorded command into a different file reproduces identical bytes.
std::string manifest_line(int argc, char** argv, std::uint64_t seed, int threads) {
    std::vector<std::string> cmd;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--out" || arg == "-o") {
            ++i;  // skip the path value as well
            continue;
        }
        if (arg.rfind("--out=", 0) == 0) continue;
        cmd.push_back(arg);
    }
    json m;
    m["command"] = cmd;
    m["seed"] = seed;
    m["threads"] = threads;
    m["version"] = kVersion;
    return "#" + m.dump();
}

// Write-to-temp-then-rename keeps partially written files from ever
// appearing under the target name.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(out_path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        f << content;
        if (!f.good()) throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

struct CsvBuilder {
    std::string text;

    void line(const std::string& s) {
        text += s;
        text += '\n';
    }
    void row(const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            s += cells[i];
        }
        line(s);
    }
};

// ---------------------------------------------------------------------------
// Subcommand argument bags
// ---------------------------------------------------------------------------

struct ScalingArgs {
    std::vector<int> n_list{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    std::vector<std::string> delta_list{"0", "pi/6", "pi/3", "pi"};
    int symbols = 500;
    double power_dbm = -20.0;
    double power_watts = 0.0;
    bool watts_given = false;
    double rs = 50.0;
    std::string diode;
};

struct CapacityArgs {
    int m = 0;
    std::vector<std::string> delta_list{"pi/6", "pi/4", "pi/2", "pi"};
    std::vector<double> snr_db_list{-20, -15, -10, -5, 0, 5, 10, 15, 20};
    std::string input = "uniform";
};

struct RegionArgs {
    int m = 0;
    std::string delta;
    double snr_db = 20.0;
    int carriers = 8;
    double power_dbm = -20.0;
    double power_watts = 0.0;
    bool watts_given = false;
    double rs = 50.0;
    std::string diode;
    std::string rate_grid;  // empty -> 21 points spanning [0, log2 M]
    double step = 0.02;     // esm only
};

struct PmfArgs {
    int m = 0;
    std::string delta;
    std::vector<double> probs;  // empty -> uniform
};

struct GradcheckArgs {
    int m = 0;
    std::string delta;
    double snr_db = 10.0;
    int xi_points = 100;
    int entropy_points = 20;
};

double resolve_power(double dbm, double watts, bool watts_given) {
    return watts_given ? watts : swipt::dbm_to_watts(dbm);
}

// ---------------------------------------------------------------------------
// Subcommand bodies; each returns the process exit code.
// ---------------------------------------------------------------------------

int run_scaling(const ScalingArgs& a, std::uint64_t seed, const std::string& manifest,
                const std::string& out) {
    const double power = resolve_power(a.power_dbm, a.power_watts, a.watts_given);
    const swipt::DiodeParams diode = parse_diode(a.diode);
    if (a.symbols < 1) throw std::invalid_argument("--symbols must be at least 1");

    CsvBuilder csv;
    csv.line(manifest);
    csv.line("N,delta,zdc_analytic,zdc_mc,stderr");

    const swipt::SplitMix64 root(seed);
    std::size_t row = 0;
    for (const std::string& dtext : a.delta_list) {
        const double delta = parse_angle(dtext);
        for (int N : a.n_list) {
            if (N < 1) throw std::invalid_argument("carrier counts must be at least 1");
            const auto e = swipt::make_energy_params(diode, a.rs, power, N);

            swipt::TxConfig cfg;
            cfg.carriers = N;
            cfg.power = power;
            cfg.num_symbols = a.symbols;
            cfg.seed = root.split(row).next();
            cfg.source = swipt::uniform_phase_source(delta);
            const auto est = swipt::monte_carlo_zdc(cfg, e);

            csv.row({fmt(N), fmt(delta), fmt(swipt::scaling_continuous(delta, e)), fmt(est.zdc),
                     fmt(est.stderr4)});
            ++row;
        }
    }
    emit(out, csv.text);
    return 0;
}

int run_capacity(const CapacityArgs& a, const std::string& manifest, const std::string& out) {
    CsvBuilder csv;
    csv.line(manifest);
    std::string header = "delta,snr_db,rate_bits";
    for (int m = 0; m < a.m; ++m) header += ",p" + std::to_string(m);
    csv.line(header);

    for (const std::string& dtext : a.delta_list) {
        const double delta = parse_angle(dtext);
        const auto c = swipt::build_constellation(a.m, delta);
        for (double db : a.snr_db_list) {
            const swipt::AwgnChannel ch{std::pow(10.0, db / 10.0)};
            swipt::SymbolPmf p = swipt::uniform_pmf(a.m);
            if (a.input == "ba") {
                // Capacity-achieving input of the hard-decision channel whose
                // detector regions come from the uniform prior.
                const auto dmc = swipt::transition_matrix(swipt::uniform_pmf(a.m), c, ch);
                p = swipt::blahut_arimoto(dmc).p_opt;
            }
            const double rate = swipt::mutual_information(p, c, ch);
            std::vector<std::string> cells{fmt(delta), fmt(db), fmt(rate)};
            for (int m = 0; m < a.m; ++m) cells.push_back(fmt(p[m]));
            csv.row(cells);
        }
    }
    emit(out, csv.text);
    return 0;
}

std::vector<double> region_grid(const RegionArgs& a) {
    if (!a.rate_grid.empty()) return parse_grid(a.rate_grid);
    std::vector<double> g(21);
    const double top = std::log2(static_cast<double>(a.m));
    for (int i = 0; i < 21; ++i) g[static_cast<std::size_t>(i)] = top * i / 20.0;
    return g;
}

int run_region(const RegionArgs& a, const std::string& manifest, const std::string& out) {
    const double power = resolve_power(a.power_dbm, a.power_watts, a.watts_given);
    const auto e = swipt::make_energy_params(parse_diode(a.diode), a.rs, power, a.carriers);
    const auto c = swipt::build_constellation(a.m, parse_angle(a.delta));
    const swipt::AwgnChannel ch{std::pow(10.0, a.snr_db / 10.0)};

    const auto points = swipt::sweep_region(region_grid(a), c, ch, e);

    CsvBuilder csv;
    csv.line(manifest);
    std::string header = "R,achieved_rate,xi,zdc_uA";
    for (int m = 0; m < a.m; ++m) header += ",p" + std::to_string(m);
    header += ",kkt,converged";
    csv.line(header);

    bool all_ok = true;
    for (const auto& pt : points) {
        std::vector<std::string> cells{fmt(pt.rate_bound), fmt(pt.achieved_rate), fmt(pt.xi),
                                       fmt(pt.zdc * 1e6)};
        for (int m = 0; m < a.m; ++m) cells.push_back(fmt(pt.pmf[m]));
        cells.push_back(fmt(pt.kkt_residual));
        cells.push_back(pt.converged ? "1" : "0");
        csv.row(cells);
        all_ok = all_ok && pt.converged;
    }
    emit(out, csv.text);
    if (!all_ok) {
        std::cerr << "region: some points did not converge (converged=0 rows)\n";
        return 3;
    }
    return 0;
}

int run_esm(const RegionArgs& a, const std::string& manifest, const std::string& out) {
    const double power = resolve_power(a.power_dbm, a.power_watts, a.watts_given);
    const auto e = swipt::make_energy_params(parse_diode(a.diode), a.rs, power, a.carriers);
    const auto c = swipt::build_constellation(a.m, parse_angle(a.delta));
    const swipt::AwgnChannel ch{std::pow(10.0, a.snr_db / 10.0)};
    const swipt::OutputEntropy entropy(c, ch);

    CsvBuilder csv;
    csv.line(manifest);
    std::string header = "R,achieved_rate,xi,zdc_uA";
    for (int m = 0; m < a.m; ++m) header += ",p" + std::to_string(m);
    header += ",kkt,converged";
    csv.line(header);

    bool all_ok = true;
    for (double R : region_grid(a)) {
        const auto pt = swipt::esm_oracle(R, c, entropy, e, a.step);
        std::vector<std::string> cells{fmt(pt.rate_bound), fmt(pt.achieved_rate), fmt(pt.xi),
                                       fmt(pt.zdc * 1e6)};
        for (int m = 0; m < a.m; ++m) cells.push_back(fmt(pt.pmf[m]));
        cells.push_back(fmt(pt.kkt_residual));
        cells.push_back(pt.converged ? "1" : "0");
        csv.row(cells);
        all_ok = all_ok && pt.converged;
    }
    emit(out, csv.text);
    if (!all_ok) {
        std::cerr << "esm: some rate bounds had no feasible lattice point (converged=0 rows)\n";
        return 3;
    }
    return 0;
}

int run_pmf(const PmfArgs& a, const std::string& manifest, const std::string& out) {
    const auto c = swipt::build_constellation(a.m, parse_angle(a.delta));
    const swipt::SymbolPmf p =
        a.probs.empty() ? swipt::uniform_pmf(a.m) : swipt::make_pmf(a.probs);
    const auto dist = swipt::theta_pmf(p, c);
    const double factor = swipt::xi(p, c);

    CsvBuilder csv;
    csv.line(manifest);
    csv.line("theta_rad,prob,xi");
    for (std::size_t k = 0; k < dist.support.size(); ++k)
        csv.row({fmt(dist.support[k]), fmt(dist.probs[k]), fmt(factor)});
    emit(out, csv.text);
    return 0;
}

int run_gradcheck(const GradcheckArgs& a, std::uint64_t seed, const std::string& manifest,
                  const std::string& out) {
    if (a.xi_points < 1 || a.entropy_points < 1)
        throw std::invalid_argument("gradcheck needs at least one point per quantity");
    const auto c = swipt::build_constellation(a.m, parse_angle(a.delta));
    const swipt::AwgnChannel ch{std::pow(10.0, a.snr_db / 10.0)};
    const swipt::OutputEntropy engine(c, ch);

    swipt::SplitMix64 rng(seed);
    const auto random_pmf = [&]() {
        // Exponential spacings normalized onto the simplex.
        std::vector<double> v(static_cast<std::size_t>(a.m));
        long double total = 0.0L;
        for (auto& x : v) {
            x = -std::log(1.0 - rng.uniform01());
            total += x;
        }
        for (auto& x : v) x = static_cast<double>(x / static_cast<double>(total));
        return swipt::SymbolPmf{v};
    };

    const auto fd_max_err = [&](const std::function<double(const swipt::SymbolPmf&)>& f,
                                const std::function<std::vector<double>(const swipt::SymbolPmf&)>& g,
                                int points, double h) {
        double worst = 0.0;
        for (int i = 0; i < points; ++i) {
            swipt::SymbolPmf p = random_pmf();
            const auto grad = g(p);
            double scale = 0.0;
            for (double v : grad) scale = std::max(scale, std::abs(v));
            if (scale == 0.0) scale = 1.0;
            for (int m = 0; m < a.m; ++m) {
                swipt::SymbolPmf q = p;
                q[m] = p[m] + h;
                const double fp = f(q);
                q[m] = p[m] - h;
                const double fm = f(q);
                const double fd = (fp - fm) / (2.0 * h);
                worst = std::max(worst, std::abs(grad[static_cast<std::size_t>(m)] - fd) / scale);
            }
        }
        return worst;
    };

    const double xi_err = fd_max_err(
        [&](const swipt::SymbolPmf& p) { return swipt::xi(p, c); },
        [&](const swipt::SymbolPmf& p) { return swipt::grad_xi(p, c); }, a.xi_points, 1e-6);
    const double ent_err = fd_max_err(
        [&](const swipt::SymbolPmf& p) { return engine.entropy_bits(p); },
        [&](const swipt::SymbolPmf& p) { return engine.grad_entropy_bits(p); }, a.entropy_points,
        1e-5);

    CsvBuilder csv;
    csv.line(manifest);
    csv.line("quantity,points,step,max_rel_error");
    csv.row({"xi_gradient", fmt(a.xi_points), fmt(1e-6), fmt(xi_err)});
    csv.row({"entropy_gradient", fmt(a.entropy_points), fmt(1e-5), fmt(ent_err)});
    emit(out, csv.text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymmetric-PSK design tools for simultaneous power and information transfer"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string out_path;
    int threads = 0;
    app.add_option("--seed", seed, "64-bit seed for all stochastic work")->capture_default_str();
    app.add_option("--out,-o", out_path, "output CSV path (default: stdout)");
    app.add_option("--threads", threads, "worker threads (0 = auto); reserved, runs are single-threaded")
        ->capture_default_str();

    ScalingArgs sa;
    auto* scaling = app.add_subcommand("scaling", "harvested current vs carrier count: law and Monte-Carlo");
    scaling->fallthrough();
    scaling->add_option("--n-list", sa.n_list, "carrier counts");
    scaling->add_option("--delta-list", sa.delta_list, "phase half-ranges (radians or pi forms)");
    scaling->add_option("--symbols", sa.symbols, "symbol periods per estimate")->capture_default_str();
    auto* s_dbm = scaling->add_option("--power-dbm", sa.power_dbm, "average RF power in dBm")
                      ->capture_default_str();
    auto* s_w = scaling->add_option("--power-watts", sa.power_watts, "average RF power in watts");
    s_w->excludes(s_dbm);
    s_dbm->excludes(s_w);
    scaling->add_option("--rs-ohms", sa.rs, "antenna resistance")->capture_default_str();
    scaling->add_option("--diode", sa.diode, "diode parameters is,n,vt");

    CapacityArgs ca;
    auto* capacity = app.add_subcommand("capacity", "mutual information vs SNR");
    capacity->fallthrough();
    capacity->add_option("--m", ca.m, "constellation size (even)")->required();
    capacity->add_option("--delta-list", ca.delta_list, "phase half-ranges");
    capacity->add_option("--snr-db-list", ca.snr_db_list, "SNR grid in dB");
    capacity->add_option("--input", ca.input, "input distribution: uniform or ba")
        ->check(CLI::IsMember({"uniform", "ba"}))
        ->capture_default_str();

    RegionArgs ra;
    auto* region = app.add_subcommand("region", "rate-energy boundary via constrained optimization");
    region->fallthrough();
    region->add_option("--m", ra.m, "constellation size (even)")->required();
    region->add_option("--delta", ra.delta, "phase half-range")->required();
    region->add_option("--snr-db", ra.snr_db, "SNR in dB")->capture_default_str();
    region->add_option("--carriers", ra.carriers, "carrier count N")->capture_default_str();
    auto* r_dbm = region->add_option("--power-dbm", ra.power_dbm, "average RF power in dBm")
                      ->capture_default_str();
    auto* r_w = region->add_option("--power-watts", ra.power_watts, "average RF power in watts");
    r_w->excludes(r_dbm);
    r_dbm->excludes(r_w);
    region->add_option("--rs-ohms", ra.rs, "antenna resistance")->capture_default_str();
    region->add_option("--diode", ra.diode, "diode parameters is,n,vt");
    region->add_option("--rate-grid", ra.rate_grid, "rate grid start:stop:steps (default spans [0, log2 M])");

    RegionArgs ea;
    auto* esm = app.add_subcommand("esm", "rate-energy boundary via exhaustive lattice search");
    esm->fallthrough();
    esm->add_option("--m", ea.m, "constellation size (even, small)")->required();
    esm->add_option("--delta", ea.delta, "phase half-range")->required();
    esm->add_option("--snr-db", ea.snr_db, "SNR in dB")->capture_default_str();
    esm->add_option("--carriers", ea.carriers, "carrier count N")->capture_default_str();
    auto* e_dbm = esm->add_option("--power-dbm", ea.power_dbm, "average RF power in dBm")
                      ->capture_default_str();
    auto* e_w = esm->add_option("--power-watts", ea.power_watts, "average RF power in watts");
    e_w->excludes(e_dbm);
    e_dbm->excludes(e_w);
    esm->add_option("--rs-ohms", ea.rs, "antenna resistance")->capture_default_str();
    esm->add_option("--diode", ea.diode, "diode parameters is,n,vt");
    esm->add_option("--rate-grid", ea.rate_grid, "rate grid start:stop:steps");
    esm->add_option("--step", ea.step, "lattice resolution (must divide 1)")->capture_default_str();

    PmfArgs pa;
    auto* pmf = app.add_subcommand("pmf", "distribution of the fourth-order phase combination");
    pmf->fallthrough();
    pmf->add_option("--m", pa.m, "constellation size (even)")->required();
    pmf->add_option("--delta", pa.delta, "phase half-range")->required();
    pmf->add_option("--probs", pa.probs, "symbol probabilities (default: uniform)");

    GradcheckArgs ga;
    auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference audit of the analytic gradients");
    gradcheck->fallthrough();
    gradcheck->add_option("--m", ga.m, "constellation size (even)")->required();
    gradcheck->add_option("--delta", ga.delta, "phase half-range")->required();
    gradcheck->add_option("--snr-db", ga.snr_db, "SNR in dB")->capture_default_str();
    gradcheck->add_option("--xi-points", ga.xi_points, "random points for the energy-factor gradient")
        ->capture_default_str();
    gradcheck->add_option("--entropy-points", ga.entropy_points, "random points for the entropy gradient")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and usage hint
        return 2;
    }

    const bool watts_given_s = s_w->count() > 0;
    const bool watts_given_r = r_w->count() > 0;
    const bool watts_given_e = e_w->count() > 0;
    sa.watts_given = watts_given_s;
    ra.watts_given = watts_given_r;
    ea.watts_given = watts_given_e;

    const std::string manifest = manifest_line(argc, argv, seed, threads);
    try {
        if (scaling->parsed()) return run_scaling(sa, seed, manifest, out_path);
        if (capacity->parsed()) return run_capacity(ca, manifest, out_path);
        if (region->parsed()) return run_region(ra, manifest, out_path);
        if (esm->parsed()) return run_esm(ea, manifest, out_path);
        if (pmf->parsed()) return run_pmf(pa, manifest, out_path);
        if (gradcheck->parsed()) return run_gradcheck(ga, seed, manifest, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
