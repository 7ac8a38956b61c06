#pragma once

// Adaptive Gauss-Kronrod integration and certified semi-infinite Fourier
// integrals  I = int_a^inf A(x) exp(-i omega x) dx.
//
// The Fourier integral is split at a point Y. [a, Y] is integrated
// adaptively on a partition whose panels never exceed a quarter period of
// the oscillation. The tail [Y, inf) is replaced by kTailTerms steps of
// integration by parts,
//
//   int_Y^inf A e^{-i w x} dx = e^{-i w Y} sum_{m<p} A^(m)(Y) / (i w)^{m+1} + R,
//   |R| <= w^{-p} int_Y^inf |A^(p)| dx,
//
// with the remainder bounded by a caller-supplied analytic estimate, or by
// int_Y^inf |A| when w is too small for the expansion to pay off.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "biatom/jet.hpp"

namespace biatom::quad {

inline constexpr std::size_t kTailTerms = 4;
inline constexpr std::size_t kJetOrder = 8;

using Complex = std::complex<double>;
using ComplexJet = Jet<Complex, kJetOrder>;

struct Result {
    Complex value;
    double error = 0.0;        ///< certified bound on the absolute error
    std::size_t panels = 0;    ///< panels in the final partition
    double split_point = 0.0;  ///< Y for Fourier integrals, b otherwise
    bool converged = true;     ///< false when the panel budget ran out
};

/// Globally adaptive G10/K21 on the partition given by `breakpoints`
/// (sorted, at least two points). The panel with the largest error estimate
/// is bisected until the summed estimate is <= tol or `max_panels` is
/// reached, in which case the best estimate is returned with converged=false.
Result integrate(const std::function<Complex(double)>& f, std::span<const double> breakpoints,
                 double tol, std::size_t max_panels = 200000);

/// Breakpoints on [a, b]: panels of width `feature_scale` up to `feature_end`,
/// geometric growth beyond, and never wider than pi / (4 omega) when omega > 0.
std::vector<double> oscillation_partition(double a, double b, double omega, double feature_scale,
                                          double feature_end);

struct FourierAmplitude {
    std::function<Complex(double)> value;
    /// Taylor expansion of A at x (coefficients up to kJetOrder).
    std::function<ComplexJet(double)> jet;
    /// Bound on int_y^inf |A^(kTailTerms)(x)| dx, valid for y >= bounds_from.
    std::function<double(double)> derivative_tail_bound;
    /// Bound on int_y^inf |A(x)| dx, valid for y >= bounds_from.
    std::function<double(double)> magnitude_tail_bound;
    double bounds_from = 0.0;
    double feature_scale = 1.0;
    double feature_end = 0.0;
};

/// int_a^inf A(x) e^{-i omega x} dx for omega >= 0, to absolute error <= tol.
/// Returns converged=false (never throws) when the budget is insufficient.
Result fourier_integral(const FourierAmplitude& amplitude, double a, double omega, double tol,
                        std::size_t max_panels = 200000);

}  // namespace biatom::quad
