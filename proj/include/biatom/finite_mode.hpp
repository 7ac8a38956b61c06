#pragma once

// Exact diagonalization of the center-of-mass oscillator coupled to N cavity
// modes. The potential energy is q^T M q / 2 with
//
//   M[0][0] = omega0^2,  M[k][k] = omega_k^2 = (k pi / R)^2,
//   M[0][k] = M[k][0] = -gamma * eta * omega_k,  eta = 2 sqrt(g dw / pi),
//
// dw = pi / R, c = 1. With M = T diag(Omega_r^2) T^T the survival amplitude
// of the bare center-of-mass excitation is f(t) = sum_r T[0][r]^2 e^{-i Omega_r t}.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "biatom/core.hpp"

namespace biatom {

struct FiniteModeParams {
    std::size_t n_modes = 200;
    double omega0 = 2.0;  ///< bare center-of-mass frequency
    double g = 1.0;
    double radius = 10.0;
    double gamma = 1.0;  ///< coupling-convention factor on the off-diagonal

    double mode_spacing() const { return kPi / radius; }
    double mode_frequency(std::size_t k) const { return static_cast<double>(k) * mode_spacing(); }
    double eta() const;
    /// |M[0][k]|
    double coupling(std::size_t k) const;
    /// sum_k M[0][k]^2 / omega_k^2: M is positive definite iff omega0^2 exceeds it.
    double binding_threshold() const;
    double delta() const { return g * radius / kPi; }
    double revival_time() const { return 2.0 * radius; }
};

void validate_into(const FiniteModeParams& params, ValidationReport& report);
void require_valid(const FiniteModeParams& params);

Eigen::MatrixXd build_quadratic_form(const FiniteModeParams& params);

struct NormalModeSystem {
    std::vector<double> frequencies;  ///< Omega_r, ascending
    std::vector<double> weights;      ///< T[0][r]^2
    /// Full orthogonal T (row nu = oscillator/mode, column r); empty when
    /// produced by the secular-equation route.
    Eigen::MatrixXd transform;

    std::size_t size() const { return frequencies.size(); }
    double weight_sum() const;
};

/// Dense symmetric eigensolver route. Throws InvalidInput for a non-symmetric
/// M, UnstableConfiguration for an eigenvalue <= 0, and NumericalFailure if
/// the residual max_r ||M v - l v|| exceeds eig_tol * ||M||.
NormalModeSystem normal_modes(const Eigen::MatrixXd& m, double eig_tol = 1e-9);

/// Secular-equation route for the arrowhead structure of M: O(N^2) work,
/// frequencies and weights only.
NormalModeSystem normal_modes_arrowhead(const FiniteModeParams& params);

/// Largest ||M v_r - lambda_r v_r|| over the eigenpairs of nm.
double max_residual(const Eigen::MatrixXd& m, const NormalModeSystem& nm);

std::complex<double> f_exact(double t, const NormalModeSystem& nm);

/// |sum_nu |f_{+nu}(t)|^2 - 1| with f_{+nu}(t) = sum_r T[0][r] T[nu][r] e^{-i Omega_r t}.
double unitarity_deviation(double t, const NormalModeSystem& nm);

/// Frequency at the peak of the spectral weight density w_r / spacing_r,
/// refined by a parabola through the neighbouring samples.
double dominant_frequency(const NormalModeSystem& nm);

/// Bare frequency above the binding threshold whose dominant frequency
/// equals `target` (bisection on omega0^2 - threshold).
FiniteModeParams tune_bare_frequency(FiniteModeParams params, double target);

struct DecayFit {
    double rate;       ///< -slope of log|f| versus t
    double intercept;  ///< fitted log|f| at t = 0
};

/// Least-squares fit of log|f_exact(t)| over [t_begin, t_end] sampled every dt.
DecayFit fit_decay_rate(const NormalModeSystem& nm, double t_begin, double t_end, double dt = 0.01);

/// min |f_exact(t)|^2 over a uniform grid on [0, t_end].
double min_survival(const NormalModeSystem& nm, double t_end, double dt);

struct CalibrationRequest {
    std::size_t n_modes = 1000;
    double g = 1.0;
    double radius = 5.0 * kPi;
    double omega_bar = 1.5;  ///< target dominant frequency
    double window_start = 1.0;
    double window_end = 6.0;
};

struct CalibrationCandidate {
    double gamma;
    double omega0;
    double fitted_rate;
    double mismatch;  ///< |fitted_rate - g| / g
};

struct CalibrationReport {
    double gamma = 0.0;
    double omega0 = 0.0;
    double fitted_rate = 0.0;
    double mismatch = 0.0;
    std::size_t n_modes = 0;
    double radius = 0.0;
    double revival_time = 0.0;
    std::vector<CalibrationCandidate> candidates;
};

inline constexpr double kCalibrationRejectMismatch = 0.25;

/// Tries gamma in {1/2, 1, 2} and keeps the one whose envelope rate is
/// closest to g. Requires a large-cavity proxy (delta = gR/pi >= 5), enough
/// modes to cover ten times the target frequency, and a fit window ending
/// before the revival time. Throws InvalidInput on a failed precondition and
/// CalibrationFailure if no candidate comes within 25% of g.
CalibrationReport calibrate_gamma(const CalibrationRequest& request);

}  // namespace biatom
