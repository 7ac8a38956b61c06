// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "biatom/amplitude.hpp"
#include "biatom/commands.hpp"
#include "biatom/finite_mode.hpp"
#include "biatom/measures.hpp"
#include "biatom/series.hpp"
#include "oracles.hpp"

using namespace biatom;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0.0 && secs > limit_seconds) {
        out.pass = false;
        out.detail += (out.detail.empty() ? "" : "; ") + std::string("runtime over ") + num(limit_seconds) + " s";
    }
    if (!out.pass) ++failures;
    std::printf("criterion %d %s: %s (%.2f s)%s%s\n", id, name, out.pass ? "PASS" : "FAIL", secs,
                out.detail.empty() ? "" : " - ", out.detail.c_str());
    std::fflush(stdout);
}

SimulationConfig reference_config(bool small_cavity, double t_end, std::size_t n) {
    SimulationConfig c;
    c.system.omega_bar = 1.5;
    c.system.g = 1.0;
    if (small_cavity) c.system.regime = SmallCavity{0.1};
    c.state.xi = 0.5;
    c.grid = {0.0, t_end, n};
    return c;
}

Outcome initial_conditions() {
    Outcome o;
    for (bool small : {false, true}) {
        for (double xi : {0.1, 0.3, 0.5, 0.9}) {
            auto c = reference_config(small, 1.0, 2);
            c.state.xi = xi;
            const auto f = f_amplitude(0.0, c.system, c.tolerances);
            const auto m = measures(reduced_density(c.state, f));
            const double c0 = 2.0 * std::sqrt(xi * (1.0 - xi));
            const std::string tag = std::string(small ? "small" : "large") + " xi=" + num(xi);
            o.require(std::abs(f.value - std::complex<double>{1.0, 0.0}) <= 1e-10, tag + " f(0) != 1");
            o.require(m.impurity <= 1e-9, tag + " D(0) = " + num(m.impurity));
            o.require(std::abs(m.concurrence - c0) <= 1e-9, tag + " C(0) = " + num(m.concurrence));
            o.require(std::abs(m.negativity - c0) <= 1e-9, tag + " N(0) = " + num(m.negativity));
        }
    }
    return o;
}

double envelope_rise(const std::vector<double>& v) {
    std::vector<double> peaks{v.front()};
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) peaks.push_back(v[i]);
    }
    double rise = 0.0;
    for (std::size_t i = 1; i < peaks.size(); ++i) rise = std::max(rise, peaks[i] - peaks[i - 1]);
    return rise;
}

Outcome large_cavity_decay() {
    Outcome o;
    const auto series = evolve(reference_config(false, 10.0, 1001));
    const auto& rows = series.rows;
    std::vector<double> c, n;
    double worst_rise = 0.0;
    bool positive = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) worst_rise = std::max(worst_rise, rows[i].abs_f_sq - rows[i - 1].abs_f_sq);
        c.push_back(rows[i].concurrence);
        n.push_back(rows[i].negativity);
        positive = positive && rows[i].concurrence > 0.0 && rows[i].negativity > 0.0;
    }
    const double c_rise = envelope_rise(c), n_rise = envelope_rise(n);
    const auto& last = rows.back();
    o.require(worst_rise <= 1e-6, "|f|^2 rises by " + num(worst_rise));
    o.require(c_rise <= 1e-6, "C envelope rises by " + num(c_rise));
    o.require(n_rise <= 1e-6, "N envelope rises by " + num(n_rise));
    o.require(std::abs(last.impurity - 0.5) <= 1e-3, "D(10) = " + num(last.impurity));
    o.require(last.concurrence <= 1e-2, "C(10) = " + num(last.concurrence));
    o.require(last.negativity <= 1e-2, "N(10) = " + num(last.negativity));
    o.require(positive, "C or N reached zero (sudden death)");
    if (o.pass) {
        o.detail = "max |f|^2 rise " + num(worst_rise) + " D(10)=" + num(last.impurity) +
                   " C(10)=" + num(last.concurrence) + " N(10)=" + num(last.negativity);
    }
    return o;
}

Outcome small_cavity_persistence() {
    Outcome o;
    const auto series = evolve(reference_config(true, 200.0, 20001));
    double min_f2 = 1.0, min_c = 1.0, min_n = 1.0;
    for (const auto& r : series.rows) {
        min_f2 = std::min(min_f2, r.abs_f_sq);
        min_c = std::min(min_c, r.concurrence);
        min_n = std::min(min_n, r.negativity);
    }
    o.require(min_f2 >= 0.427, "min |f|^2 = " + num(min_f2));
    o.require(min_c >= 0.6536, "min C = " + num(min_c));
    o.require(min_n > 0.0, "min N = " + num(min_n));
    if (o.pass) o.detail = "min|f|^2=" + num(min_f2) + " minC=" + num(min_c) + " minN=" + num(min_n);
    return o;
}

Outcome measure_equivalence() {
    Outcome o;
    auto gen = oracle::rng(7);
    double worst = 0.0, worst_gap_pure = 0.0, min_gap_mixed = 1.0;
    for (int i = 0; i < 10000; ++i) {
        const bool pure = i % 10 == 0;
        const StateSpec s{oracle::uniform(gen, 0.001, 0.999), oracle::uniform(gen, 0.0, 2.0 * oracle::kPi)};
        const double modulus = pure ? 1.0 : oracle::uniform(gen, 0.0, 0.999);
        const Amplitude f{std::polar(modulus, oracle::uniform(gen, -oracle::kPi, oracle::kPi))};
        const auto rho = reduced_density(s, f);
        const auto m = measures(rho);
        worst = std::max({worst, std::abs(m.impurity - impurity_from_matrix(rho)),
                          std::abs(m.concurrence - concurrence_from_factorization(rho)),
                          std::abs(m.negativity - negativity_from_spectrum(rho)),
                          std::abs(m.negativity - negativity_from_trace_norm(rho))});
        o.require(m.negativity <= m.concurrence + 1e-12, "N > C at sample " + std::to_string(i));
        const double gap = m.concurrence - m.negativity;
        if (pure) {
            worst_gap_pure = std::max(worst_gap_pure, std::abs(gap));
        } else {
            min_gap_mixed = std::min(min_gap_mixed, gap);
        }
    }
    o.require(worst <= 1e-10, "closed form vs oracle differs by " + num(worst));
    o.require(worst_gap_pure <= 1e-12, "pure states: |C - N| = " + num(worst_gap_pure));
    o.require(min_gap_mixed > 1e-12, "mixed state with C = N: gap " + num(min_gap_mixed));
    if (o.pass) o.detail = "max deviation " + num(worst);
    return o;
}

Outcome quadrature_certification() {
    Outcome o;
    auto gen = oracle::rng(2024);
    constexpr double tol = 1e-10;
    double worst_self = 0.0, worst_oracle = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double g = oracle::uniform(gen, 0.1, 1.4);
        const double wb = oracle::uniform(gen, 1.05 * g, 3.0);
        const double t = oracle::uniform(gen, 0.5, 20.0);
        const SystemParams p{wb, g, LargeCavity{}};
        const double a = g_integral(t, p, tol);
        const double b = g_integral(t, p, tol / 2.0);
        const double ref = oracle::brute_force_g(t, wb, g).value;
        worst_self = std::max(worst_self, std::abs(a - b));
        worst_oracle = std::max(worst_oracle, std::abs(a - ref));
        o.require(std::abs(a - b) < tol, "tol vs tol/2 at t=" + num(t) + ": " + num(std::abs(a - b)));
        o.require(std::abs(a - ref) <= 3.0 * tol, "oracle at t=" + num(t) + " wb=" + num(wb) + " g=" + num(g) +
                                                     ": " + num(std::abs(a - ref)));
    }
    if (o.pass) o.detail = "max |G(tol)-G(tol/2)|=" + num(worst_self) + " max |G-oracle|=" + num(worst_oracle);
    return o;
}

Outcome finite_mode_oracle() {
    Outcome o;
    FiniteModeParams p;
    p.n_modes = 200;
    p.radius = 10.0;
    p = tune_bare_frequency(p, 1.5);
    const auto dense = normal_modes(build_quadratic_form(p));
    double unitarity = 0.0;
    for (int i = 0; i <= 40; ++i) unitarity = std::max(unitarity, unitarity_deviation(0.5 * i, dense));
    const double norm_dev = std::abs(dense.weight_sum() - 1.0);
    o.require(norm_dev <= 1e-9, "weight sum off by " + num(norm_dev));
    o.require(unitarity <= 1e-9, "unitarity deviation " + num(unitarity));

    const auto cal = calibrate_gamma(CalibrationRequest{});
    o.require(cal.mismatch <= 0.05, "calibrated rate " + num(cal.fitted_rate) + " (gamma " + num(cal.gamma) + ")");

    const double delta = 0.1;
    FiniteModeParams s;
    s.n_modes = 100;
    s.radius = delta * oracle::kPi;
    s = tune_bare_frequency(s, 1.5);
    const double lowest = min_survival(normal_modes_arrowhead(s), 200.0, 0.01);
    const double floor = small_cavity_abs_sq_floor(delta);
    o.require(lowest > 0.0 && lowest >= 0.5 * floor && lowest <= 2.0 * floor,
              "small-R min |f|^2 = " + num(lowest) + " vs bound " + num(floor));
    if (o.pass) {
        o.detail = "unitarity " + num(unitarity) + ", gamma=" + num(cal.gamma) + " rate=" + num(cal.fitted_rate) +
                   ", small-R min|f|^2=" + num(lowest);
    }
    return o;
}

Outcome determinism() {
    Outcome o;
    RunConfig c;
    c.simulation = reference_config(false, 10.0, 201);
    std::ostringstream a, b, err;
    o.require(run_evolve(c, a, err) == kExitOk, "first run failed: " + err.str());
    o.require(run_evolve(c, b, err) == kExitOk, "second run failed: " + err.str());
    o.require(!a.str().empty() && a.str() == b.str(), "outputs differ");
    c.simulation = reference_config(true, 10.0, 201);
    std::ostringstream s1, s2;
    run_evolve(c, s1, err);
    run_evolve(c, s2, err);
    o.require(!s1.str().empty() && s1.str() == s2.str(), "small-cavity outputs differ");
    return o;
}

}  // namespace

int main() {
    criterion(1, "initial conditions", 1.0, initial_conditions);
    criterion(2, "large-cavity decay", 30.0, large_cavity_decay);
    criterion(3, "small-cavity persistence", 10.0, small_cavity_persistence);
    criterion(4, "measure-oracle equivalence", 5.0, measure_equivalence);
    criterion(5, "quadrature certification", 60.0, quadrature_certification);
    criterion(6, "finite-mode oracle", 60.0, finite_mode_oracle);
    criterion(7, "determinism", 0.0, determinism);
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
