#include "biatom/measures.hpp"

#include <algorithm>
#include <cmath>

namespace biatom {

namespace {

using Complex = std::complex<double>;

Matrix4c sigma_y_sigma_y() {
    Eigen::Matrix2cd sy;
    sy << Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0};
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = sy(i, j) * sy(k, l);
    return out;
}

}  // namespace

Matrix4c ReducedDensity::matrix() const {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(1, 2) = d;
    m(2, 1) = std::conj(d);
    return m;
}

ReducedDensity reduced_density(const StateSpec& state, const Amplitude& f) {
    double f2 = f.abs_sq();
    Complex fv = f.value;
    if (f2 > 1.0 + kAbsSqSlack || !std::isfinite(f2)) throw AmplitudeInvariantViolation(std::nan(""), f2);
    if (f2 > 1.0) {
        fv /= std::sqrt(f2);
        f2 = 1.0;
    }
    const double xi = state.xi;
    ReducedDensity rho;
    rho.a = xi * (1.0 - f2);
    rho.b = 1.0 - xi;
    rho.c = xi * f2;
    rho.d = std::sqrt(xi * (1.0 - xi)) * std::polar(1.0, state.phi) * std::conj(fv);
    return rho;
}

double impurity(const StateSpec& state, const Amplitude& f) {
    const double f2 = std::min(f.abs_sq(), 1.0);
    const double xi = state.xi;
    return 2.0 * xi * (1.0 - f2) * (1.0 - xi + xi * f2);
}

double impurity(const ReducedDensity& rho) {
    // a + b + c = 1 and |d|^2 = bc reduce 1 - Tr rho^2 to 2a(b + c).
    return 2.0 * rho.a * (rho.b + rho.c);
}

double impurity_from_matrix(const ReducedDensity& rho) {
    const Matrix4c m = rho.matrix();
    return 1.0 - (m * m).trace().real();
}

Matrix4c spin_flip(const ReducedDensity& rho) {
    const Matrix4c s = sigma_y_sigma_y();
    return s * rho.matrix().conjugate() * s;
}

std::array<Complex, 4> spin_flip_spectrum(const ReducedDensity& rho) {
    const Matrix4c product = rho.matrix() * spin_flip(rho);
    Eigen::ComplexEigenSolver<Matrix4c> solver(product, /*computeEigenvectors=*/false);
    std::array<Complex, 4> ev{};
    for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) { return x.real() > y.real(); });
    return ev;
}

double concurrence(const ReducedDensity& rho) { return 2.0 * std::sqrt(rho.b * rho.c); }

double concurrence_from_spectrum(const ReducedDensity& rho) {
    const auto ev = spin_flip_spectrum(rho);
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(ev[i].real(), 0.0));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence_from_factorization(const ReducedDensity& rho) {
    const Matrix4c m = rho.matrix();
    Eigen::LDLT<Matrix4c> ldlt(m);
    const Matrix4c lower = ldlt.matrixL();
    Eigen::Vector4cd root;
    for (int i = 0; i < 4; ++i) root(i) = std::sqrt(std::max(ldlt.vectorD()(i).real(), 0.0));
    const Matrix4c w = ldlt.transpositionsP().transpose() * (lower * root.asDiagonal());
    const Matrix4c tau = w.transpose() * sigma_y_sigma_y() * w;
    Eigen::JacobiSVD<Matrix4c> svd(tau);
    const auto& s = svd.singularValues();
    return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

Matrix4c partial_transpose(const ReducedDensity& rho) {
    const Matrix4c m = rho.matrix();
    Matrix4c pt;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) pt(2 * i + j, 2 * k + l) = m(2 * i + l, 2 * k + j);
    return pt;
}

std::array<double, 4> partial_transpose_spectrum(const ReducedDensity& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(partial_transpose(rho), Eigen::EigenvaluesOnly);
    std::array<double, 4> ev{};
    for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()(i);
    return ev;
}

double negativity(const ReducedDensity& rho) {
    const double d2 = std::norm(rho.d);
    if (d2 == 0.0) return 0.0;
    // sqrt(a^2 + 4|d|^2) - a = 4|d|^2 / (sqrt(a^2 + 4|d|^2) + a)
    return 4.0 * d2 / (std::sqrt(rho.a * rho.a + 4.0 * d2) + rho.a);
}

double negativity_closed_form(double xi, double abs_f_sq) {
    const double f2 = abs_f_sq;
    return std::sqrt(xi * xi + (4.0 * xi - 6.0 * xi * xi) * f2 + xi * xi * f2 * f2) - xi + xi * f2;
}

double negativity_from_spectrum(const ReducedDensity& rho) {
    double neg = 0.0;
    for (double l : partial_transpose_spectrum(rho))
        if (l < 0.0) neg += l;
    return 2.0 * std::abs(neg);
}

double negativity_from_trace_norm(const ReducedDensity& rho) {
    Eigen::JacobiSVD<Matrix4c> svd(partial_transpose(rho));
    return svd.singularValues().sum() - 1.0;
}

std::array<double, 4> density_spectrum(const ReducedDensity& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    std::array<double, 4> ev{};
    for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()(i);
    return ev;
}

Measures measures(const ReducedDensity& rho) {
    return {impurity(rho), concurrence(rho), negativity(rho)};
}

}  // namespace biatom
