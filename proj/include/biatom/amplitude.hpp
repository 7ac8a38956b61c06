#pragma once

// Survival amplitude f(t) of the dressed center-of-mass excitation.
//
// Large cavity:  f(t) = e^{-g t}[cos(kappa t) - (g/kappa) sin(kappa t)] + i G(t)
//   G(t) = -(4g/pi) int_0^inf y^2 sin(y t) / ((y^2 - wb^2)^2 + 4 g^2 y^2) dy
//
// Small cavity:  f(t) = P^{-1} { e^{-i wb (1 - pi d/2) t}
//                        + sum_k (4d / pi k^2) e^{-i (g/d)(k + 2d/(pi k)) t} },
//   P = 1 + 2 pi d / 3, d = delta.

#include <complex>
#include <cstddef>

#include "biatom/core.hpp"

namespace biatom {

struct Amplitude {
    std::complex<double> value{1.0, 0.0};

    double re() const { return value.real(); }
    double im() const { return value.imag(); }
    double abs_sq() const { return std::norm(value); }
};

struct GIntegral {
    double value = 0.0;
    double error = 0.0;        ///< certified absolute error bound
    std::size_t panels = 0;    ///< adaptive panels on [0, split_point]
    double split_point = 0.0;  ///< start of the integration-by-parts tail
};

/// G(t) with |error| <= tol. G(0) = 0 without quadrature. Throws
/// QuadratureNonConvergence (carrying the best estimate) if the panel budget
/// is exhausted.
GIntegral g_integral_estimate(double t, const SystemParams& params, double tol);
double g_integral(double t, const SystemParams& params, double tol);

/// (4g/pi) int_0^inf y^2 e^{-i y t} / D(y) dy evaluated entirely by
/// quadrature. Its real part must reproduce the closed-form real part of the
/// large-cavity amplitude; its imaginary part is G(t).
std::complex<double> spectral_transform(double t, const SystemParams& params, double tol);

/// Closed-form real part e^{-g t}[cos(kappa t) - (g/kappa) sin(kappa t)].
double large_cavity_real_part(double t, const SystemParams& params);

Amplitude f_large(double t, const SystemParams& params, double tol);

enum class TailMethod {
    abel,            ///< repeated summation by parts, away from resonance
    euler_maclaurin  ///< near-resonant phases, smooth summand
};

struct SmallCavitySeries {
    Amplitude amplitude;
    double error_bound = 0.0;   ///< bound on the truncation/tail error of f
    std::size_t direct_terms = 0;
    TailMethod tail_method = TailMethod::abel;
};

/// Evaluates the small-cavity series: the first `direct_terms` terms are
/// summed explicitly (0 selects automatically, growing until the certified
/// tail error is <= tol); the remainder sum_{k>K} is evaluated in closed
/// asymptotic form with a rigorous remainder bound.
SmallCavitySeries small_cavity_series(double t, const SystemParams& params, double tol,
                                      std::size_t direct_terms = 0);

Amplitude f_small(double t, const SystemParams& params, double tol);

/// Reverse-triangle lower bound on |f|^2 for the small-cavity series:
/// ((1 - 2 pi d/3) / (1 + 2 pi d/3))^2.
double small_cavity_abs_sq_floor(double delta);

/// Dispatches on the regime and enforces 0 < |f|^2 <= 1 + kAbsSqSlack,
/// throwing AmplitudeInvariantViolation otherwise.
Amplitude f_amplitude(double t, const SystemParams& params, const Tolerances& tolerances);

}  // namespace biatom
