#pragma once

// Reference computations used only by the tests. None of them shares code
// with the library routines they check.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>

namespace oracle {

constexpr double kPi = 3.14159265358979323846;

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Five-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};

struct BruteForceG {
    double value = 0.0;
    int refinements = 0;
    double cutoff = 0.0;
};

// G(t) = -(4g/pi) int_0^L y^2 sin(yt) / ((y^2 - wb^2)^2 + 4 g^2 y^2) dy on fixed
// panels, L the first zero of cos(yt) past 1e4. The panel width starts at
// min(0.01, pi/(8t)) and is halved until three successive results agree.
inline BruteForceG brute_force_g(double t, double wb, double g, double agree = 1e-9) {
    const double n = std::ceil(1e4 * t / kPi - 0.5);
    const double cutoff = (n + 0.5) * kPi / t;
    const double width0 = std::min(0.01, kPi / (8.0 * t));
    auto panel_sum = [&](std::size_t panels) {
        const double h = cutoff / static_cast<double>(panels);
        Neumaier acc;
        for (std::size_t p = 0; p < panels; ++p) {
            const double mid = (static_cast<double>(p) + 0.5) * h;
            double local = 0.0;
            for (std::size_t i = 0; i < 5; ++i) {
                const double y = mid + 0.5 * h * kGlNodes[i];
                const double y2 = y * y;
                const double d = (y2 - wb * wb) * (y2 - wb * wb) + 4.0 * g * g * y2;
                local += kGlWeights[i] * y2 * std::sin(y * t) / d;
            }
            acc.add(0.5 * h * local);
        }
        return -4.0 * g / kPi * acc.value();
    };
    std::size_t panels = static_cast<std::size_t>(std::ceil(cutoff / width0));
    double prev2 = panel_sum(panels);
    panels *= 2;
    double prev1 = panel_sum(panels);
    int level = 1;
    for (;;) {
        panels *= 2;
        ++level;
        const double cur = panel_sum(panels);
        if (std::abs(cur - prev1) <= agree && std::abs(prev1 - prev2) <= agree) return {cur, level, cutoff};
        if (level > 8) return {cur, level, cutoff};
        prev2 = prev1;
        prev1 = cur;
    }
}

// Small-cavity amplitude with the series cut after `terms` terms, summed
// directly in compensated arithmetic. The discarded tail is at most
// truncation_bound(delta, terms).
inline std::complex<double> brute_force_series(double t, double wb, double g, double delta, std::size_t terms) {
    Neumaier re, im;
    const double w = 4.0 * delta / kPi;
    for (std::size_t k = terms; k >= 1; --k) {
        const double kd = static_cast<double>(k);
        const double phase = (g / delta) * (kd + 2.0 * delta / (kPi * kd)) * t;
        re.add(w * std::cos(phase) / (kd * kd));
        im.add(-w * std::sin(phase) / (kd * kd));
    }
    const double p = 1.0 + 2.0 * kPi * delta / 3.0;
    const double phase0 = wb * (1.0 - kPi * delta / 2.0) * t;
    return {(std::cos(phase0) + re.value()) / p, (-std::sin(phase0) + im.value()) / p};
}

inline double truncation_bound(double delta, std::size_t terms) {
    const double p = 1.0 + 2.0 * kPi * delta / 3.0;
    return 4.0 * delta / kPi / static_cast<double>(terms) / p;
}

// Eigen-decomposition of the symmetric 2x2 matrix [[a, c], [c, d]].
struct TwoByTwo {
    std::array<double, 2> lambda;  // ascending
    std::array<double, 2> weight;  // squared first component of each eigenvector
};

inline TwoByTwo symmetric_2x2(double a, double c, double d) {
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), c);
    TwoByTwo out;
    out.lambda = {mean - radius, mean + radius};
    for (int i = 0; i < 2; ++i) {
        const double x1 = out.lambda[i] - a;
        out.weight[i] = c * c / (c * c + x1 * x1);
    }
    return out;
}

inline std::mt19937_64 rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

}  // namespace oracle
