#include "biatom/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "biatom/quadrature.hpp"

namespace biatom {

namespace {

using Complex = std::complex<double>;
using quad::ComplexJet;
using quad::kTailTerms;

constexpr double kEps = std::numeric_limits<double>::epsilon();

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("time must be finite and >= 0");
}

// Spectral weight y^2 / D(y) of the large-cavity amplitude. For real y >= 4 wb
// the Cauchy estimate on the disk |z - y| <= y/2 (where |D(z)| >=
// (|z|^2 - wb^2)^2 since both roots of D in z^2 have modulus wb^2) gives
// |h^(p)(y)| <= p! (2/y)^p 64 / (9 y^2).
quad::FourierAmplitude spectral_weight(double wb, double g) {
    quad::FourierAmplitude amp;
    const double wb2 = wb * wb;
    const double g2x4 = 4.0 * g * g;
    amp.value = [=](double y) {
        const double y2 = y * y;
        const double d = y2 - wb2;
        return Complex{y2 / (d * d + g2x4 * y2), 0.0};
    };
    amp.jet = [=](double y0) {
        const auto y = ComplexJet::variable(Complex{y0, 0.0});
        const auto y2 = y * y;
        const auto d = y2 - Complex{wb2, 0.0};
        return y2 / (d * d + y2 * Complex{g2x4, 0.0});
    };
    constexpr double p = static_cast<double>(kTailTerms);
    const double coeff = factorial(kTailTerms) * std::pow(2.0, p) * (64.0 / 9.0) / (p + 1.0);
    amp.derivative_tail_bound = [=](double y) { return coeff * std::pow(y, -1.0 - p); };
    amp.magnitude_tail_bound = [](double y) { return 16.0 / (9.0 * y); };
    amp.bounds_from = 4.0 * wb;
    amp.feature_scale = 0.5 * std::min(g, wb);
    amp.feature_end = std::max(4.0 * wb, 20.0 * g);
    return amp;
}

quad::Result spectral_integral(double t, const SystemParams& params, double tol) {
    const double scale = 4.0 * params.g / kPi;
    auto r = quad::fourier_integral(spectral_weight(params.omega_bar, params.g), 0.0, t,
                                    tol / scale);
    r.value *= scale;
    r.error *= scale;
    return r;
}

void require_large(const SystemParams& params) {
    if (!params.is_large()) throw InvalidInput("large-cavity amplitude needs the large regime");
    (void)kappa(params);
}

// ---- small-cavity tail ---------------------------------------------------
//
// With theta = (g/d) t reduced to [-pi, pi] and eps = 2 g t / pi, term k of
// the series is (4d/pi) z^k c_k with z = e^{-i theta}, c_k = e^{-i eps/k}/k^2.
// The tail T = sum_{k>=n} z^k c_k is evaluated with a certified bound.

constexpr double kResonanceWidth = 0.5;  // |theta| below this uses Euler-Maclaurin
constexpr std::size_t kAbelOrder = 6;
constexpr std::size_t kEmOrder = 4;  // Bernoulli terms B_2 .. B_8

struct Tail {
    Complex value;
    double error;
};

Complex tail_coefficient(double k, double eps) { return std::polar(1.0 / (k * k), -eps / k); }

// T = sum_{j<p} z^{n+j} (nabla^j c)_{n+j} / (1-z)^{j+1} + (1-z)^{-p} sum_{k>=n+p} z^k (nabla^p c)_k,
// where nabla is the backward difference. Cauchy on |w - x| <= x/2:
// |c^(p)(x)| <= p! (2/x)^p 4 e^{2|eps|/x} / x^2.
Tail abel_tail(double n, double theta, double eps) {
    constexpr std::size_t p = kAbelOrder;
    std::array<Complex, p> c{};
    for (std::size_t i = 0; i < p; ++i) c[i] = tail_coefficient(n + static_cast<double>(i), eps);

    const Complex z = std::polar(1.0, -theta);
    const Complex one_minus_z = 1.0 - z;
    Tail tail{{0.0, 0.0}, 0.0};
    std::array<Complex, p> diff = c;  // diff[i] holds nabla^j c at index n + i, for i >= j
    Complex denom = one_minus_z;
    for (std::size_t j = 0; j < p; ++j) {
        if (j > 0) {
            for (std::size_t i = p - 1; i >= j; --i) diff[i] = diff[i] - diff[i - 1];
        }
        tail.value += std::polar(1.0, -(n + static_cast<double>(j)) * theta) * diff[j] / denom;
        denom *= one_minus_z;
    }
    const double pd = static_cast<double>(p);
    const double cauchy = factorial(p) * std::pow(2.0, pd) * 4.0 * std::exp(2.0 * std::abs(eps) / n);
    const double sum_bound = cauchy * (std::pow(n, -2.0 - pd) + std::pow(n, -1.0 - pd) / (pd + 1.0));
    tail.error = sum_bound / std::pow(std::abs(one_minus_z), pd);
    return tail;
}

// int_n^inf e^{-i theta x} e^{-i eps/x} / x^2 dx.
quad::Result tail_integral(double n, double theta, double eps, double tol) {
    if (theta == 0.0) {
        // substitute u = 1/x: int_0^{1/n} e^{-i eps u} du
        const double u = 1.0 / n;
        const double half = 0.5 * eps * u;
        const double sinc = half == 0.0 ? 1.0 : std::sin(half) / half;
        quad::Result r;
        r.value = u * sinc * std::polar(1.0, -half);
        r.error = 4.0 * kEps * u;
        return r;
    }
    // Negative theta: conjugate, which flips the sign of eps.
    const bool flip = theta < 0.0;
    const double w = std::abs(theta);
    const double e = flip ? -eps : eps;

    quad::FourierAmplitude amp;
    amp.value = [=](double x) { return std::polar(1.0 / (x * x), -e / x); };
    amp.jet = [=](double x0) {
        const auto x = ComplexJet::variable(Complex{x0, 0.0});
        const auto inv = ComplexJet::constant(Complex{1.0, 0.0}) / x;
        return exp(inv * Complex{0.0, -e}) * (inv * inv);
    };
    constexpr double p = static_cast<double>(kTailTerms);
    const double coeff = factorial(kTailTerms) * std::pow(2.0, p) * 4.0 / (p + 1.0);
    const double abs_e = std::abs(e);
    amp.derivative_tail_bound = [=](double y) {
        return coeff * std::exp(2.0 * abs_e / y) * std::pow(y, -1.0 - p);
    };
    amp.magnitude_tail_bound = [](double y) { return 1.0 / y; };
    amp.bounds_from = n;
    amp.feature_scale = 0.25 * n;
    amp.feature_end = n;
    auto r = quad::fourier_integral(amp, n, w, tol);
    if (flip) r.value = std::conj(r.value);
    return r;
}

// sum_{k>=n} F(k) = int_n^inf F + F(n)/2 - sum_j B_2j/(2j)! F^(2j-1)(n) + R,
// |R| <= 2 zeta(2q)/(2 pi)^{2q} int_n^inf |F^(2q)|, with F^(2q) bounded by
// Cauchy on a disk of radius rho.
Tail euler_maclaurin_tail(double n, double theta, double eps, double tol) {
    static constexpr std::array<double, kEmOrder> bernoulli{1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0,
                                                            -1.0 / 30.0};
    const auto x = ComplexJet::variable(Complex{n, 0.0});
    const auto inv = ComplexJet::constant(Complex{1.0, 0.0}) / x;
    const auto f = exp(x * Complex{0.0, -theta}) * exp(inv * Complex{0.0, -eps}) * (inv * inv);

    const auto integral = tail_integral(n, theta, eps, 0.5 * tol);
    Tail tail{integral.value + 0.5 * f[0], integral.converged
                                               ? integral.error
                                               : std::numeric_limits<double>::infinity()};
    for (std::size_t j = 1; j <= kEmOrder; ++j) {
        tail.value -= bernoulli[j - 1] / factorial(2 * j) * f.derivative(2 * j - 1);
    }

    constexpr std::size_t two_q = 2 * kEmOrder;
    const double zeta = std::pow(kPi, 8.0) / 9450.0;  // zeta(8)
    const double w = std::abs(theta);
    const double rho = w > 0.0 ? std::min(two_q / w, 0.5 * n) : 0.5 * n;
    const double shifted = n - rho;
    const double abs_e = std::abs(eps);
    const double envelope =
        abs_e > 0.0 ? std::expm1(abs_e / shifted) / abs_e : 1.0 / shifted;  // int |F| on the disk
    const double deriv_integral = factorial(two_q) * std::pow(rho, -static_cast<double>(two_q)) *
                                  std::exp(w * rho) * envelope;
    tail.error += 2.0 * zeta / std::pow(2.0 * kPi, static_cast<double>(two_q)) * deriv_integral;
    return tail;
}

}  // namespace

GIntegral g_integral_estimate(double t, const SystemParams& params, double tol) {
    require_time(t);
    require_large(params);
    if (!(tol > 0.0)) throw InvalidInput("quadrature tolerance must be > 0");
    if (t == 0.0) return {};
    const auto r = spectral_integral(t, params, tol);
    if (!r.converged) {
        throw QuadratureNonConvergence("G integral did not converge at t = " + std::to_string(t),
                                       r.value.imag(), r.error);
    }
    return {r.value.imag(), r.error, r.panels, r.split_point};
}

double g_integral(double t, const SystemParams& params, double tol) {
    return g_integral_estimate(t, params, tol).value;
}

std::complex<double> spectral_transform(double t, const SystemParams& params, double tol) {
    require_time(t);
    require_large(params);
    const auto r = spectral_integral(t, params, tol);
    if (!r.converged) {
        throw QuadratureNonConvergence(
            "spectral transform did not converge at t = " + std::to_string(t), r.value.real(),
            r.error);
    }
    return r.value;
}

double large_cavity_real_part(double t, const SystemParams& params) {
    const double k = kappa(params);
    const double g = params.g;
    return std::exp(-g * t) * (std::cos(k * t) - g / k * std::sin(k * t));
}

Amplitude f_large(double t, const SystemParams& params, double tol) {
    require_time(t);
    require_large(params);
    return {{large_cavity_real_part(t, params), g_integral(t, params, tol)}};
}

SmallCavitySeries small_cavity_series(double t, const SystemParams& params, double tol,
                                      std::size_t direct_terms) {
    require_time(t);
    const double delta = params.delta();
    if (!(delta > 0.0)) throw InvalidInput("delta must be > 0");
    if (!(tol > 0.0)) throw InvalidInput("series tolerance must be > 0");
    const double g = params.g;
    const double prefactor = 1.0 + 2.0 * kPi * delta / 3.0;
    const double weight = 4.0 * delta / kPi;

    const double theta = std::remainder(g / delta * t, 2.0 * kPi);
    const double eps = 2.0 * g * t / kPi;
    // K >= 4|eps| keeps eps/k <= 1/4 on the tail, which the bounds assume.
    const auto k_floor = static_cast<std::size_t>(std::ceil(4.0 * eps));
    const bool automatic = direct_terms == 0;
    std::size_t k_max = std::max(automatic ? std::size_t{1000} : direct_terms, k_floor);

    const Complex dominant = std::polar(1.0, -params.omega_bar * (1.0 - 0.5 * kPi * delta) * t);
    const double budget = tol * prefactor / weight;  // allowed error on the bare tail sum

    for (;;) {
        Complex partial{0.0, 0.0};
        for (std::size_t k = k_max; k >= 1; --k) {
            const double kd = static_cast<double>(k);
            partial += std::polar(1.0 / (kd * kd), -(kd * theta + eps / kd));
        }
        const double n = static_cast<double>(k_max + 1);
        const bool resonant = std::abs(theta) < kResonanceWidth;
        const Tail tail = resonant ? euler_maclaurin_tail(n, theta, eps, budget)
                                   : abel_tail(n, theta, eps);
        const double roundoff = 4.0 * static_cast<double>(k_max) * kEps;
        const double err = weight * (tail.error + roundoff) / prefactor;
        if (automatic && err > tol && k_max < (std::size_t{1} << 24)) {
            k_max *= 2;
            continue;
        }
        if (automatic && err > tol) {
            throw NumericalFailure("small-cavity series: certified error " + std::to_string(err) +
                                   " exceeds tolerance at t = " + std::to_string(t));
        }
        SmallCavitySeries out;
        out.amplitude.value = (dominant + weight * (partial + tail.value)) / prefactor;
        out.error_bound = err;
        out.direct_terms = k_max;
        out.tail_method = resonant ? TailMethod::euler_maclaurin : TailMethod::abel;
        return out;
    }
}

Amplitude f_small(double t, const SystemParams& params, double tol) {
    return small_cavity_series(t, params, tol).amplitude;
}

double small_cavity_abs_sq_floor(double delta) {
    const double s = 2.0 * kPi * delta / 3.0;
    const double r = (1.0 - s) / (1.0 + s);
    return r * r;
}

Amplitude f_amplitude(double t, const SystemParams& params, const Tolerances& tolerances) {
    const Amplitude f = params.is_large() ? f_large(t, params, tolerances.quad_tol)
                                          : f_small(t, params, tolerances.series_tol);
    const double a2 = f.abs_sq();
    if (!(a2 > 0.0) || a2 > 1.0 + kAbsSqSlack) throw AmplitudeInvariantViolation(t, a2);
    return f;
}

}  // namespace biatom
