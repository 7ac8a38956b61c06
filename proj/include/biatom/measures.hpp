#pragma once

// Reduced two-mode state and its mixedness/entanglement measures.
//
// Basis ordering {|0+0->, |0+1->, |1+0->, |1+1->}. Only the first three
// states are ever populated, so with the survival amplitude f the reduced
// matrix is
//
//      | a  0  0  0 |      a = xi (1 - |f|^2)
//      | 0  b  d  0 |      b = 1 - xi
//      | 0  d* c  0 |      c = xi |f|^2
//      | 0  0  0  0 |      d = sqrt(xi (1 - xi)) e^{i phi} conj(f)
//
// Every closed form below has an eigenvalue-based counterpart (suffix
// `_from_spectrum`) computed from the explicit 4x4 matrices with a generic
// dense solver; the two are independent routes to the same number.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "biatom/amplitude.hpp"
#include "biatom/core.hpp"

namespace biatom {

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;

struct ReducedDensity {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    std::complex<double> d{0.0, 0.0};

    Matrix4c matrix() const;
};

/// Builds rho from (xi, phi) and f. |f|^2 within kAbsSqSlack above 1 is
/// clamped to 1; anything larger throws AmplitudeInvariantViolation.
ReducedDensity reduced_density(const StateSpec& state, const Amplitude& f);

/// D = 1 - Tr rho^2 = 2 xi (1 - |f|^2)(1 - xi + xi |f|^2).
double impurity(const StateSpec& state, const Amplitude& f);
double impurity(const ReducedDensity& rho);
double impurity_from_matrix(const ReducedDensity& rho);

/// (sigma_y x sigma_y) rho^* (sigma_y x sigma_y).
Matrix4c spin_flip(const ReducedDensity& rho);

/// Eigenvalues of rho * spin_flip(rho), sorted by decreasing real part.
std::array<std::complex<double>, 4> spin_flip_spectrum(const ReducedDensity& rho);

/// C = 2 sqrt(b c).
double concurrence(const ReducedDensity& rho);
/// max(0, l1 - l2 - l3 - l4) over square roots of the rho * rho~ spectrum.
/// The square roots amplify roundoff in the vanishing eigenvalues, so this
/// route is only good to about sqrt(machine epsilon).
double concurrence_from_spectrum(const ReducedDensity& rho);
/// The same l_i obtained as singular values of W^T (sigma_y x sigma_y) W,
/// where rho = W W^dagger comes from a pivoted LDL^T factorization.
double concurrence_from_factorization(const ReducedDensity& rho);

/// Transpose on the relative-position (second) factor.
Matrix4c partial_transpose(const ReducedDensity& rho);
/// Eigenvalues of the partial transpose in ascending order.
std::array<double, 4> partial_transpose_spectrum(const ReducedDensity& rho);

/// N = sqrt(a^2 + 4|d|^2) - a, evaluated without cancellation.
double negativity(const ReducedDensity& rho);
/// The same quantity written in xi and |f|^2 only.
double negativity_closed_form(double xi, double abs_f_sq);
/// 2 |sum of negative eigenvalues of rho^{T-}|.
double negativity_from_spectrum(const ReducedDensity& rho);
/// ||rho^{T-}||_1 - 1 from the singular values of the partial transpose.
double negativity_from_trace_norm(const ReducedDensity& rho);

/// Eigenvalues of rho itself, ascending.
std::array<double, 4> density_spectrum(const ReducedDensity& rho);

struct Measures {
    double impurity;
    double concurrence;
    double negativity;
};

Measures measures(const ReducedDensity& rho);

}  // namespace biatom
