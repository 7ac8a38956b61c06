#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "biatom/quadrature.hpp"
#include "oracles.hpp"

using namespace biatom;
using quad::Complex;
using quad::ComplexJet;

namespace {

constexpr double kPi = oracle::kPi;

// A(x) = 1 / (1 + x^2), whose cosine transform is (pi/2) e^{-w}.
quad::FourierAmplitude lorentzian() {
    quad::FourierAmplitude a;
    a.value = [](double x) { return Complex{1.0 / (1.0 + x * x), 0.0}; };
    a.jet = [](double x) {
        const auto v = ComplexJet::variable(Complex{x, 0.0});
        return ComplexJet::constant(Complex{1.0, 0.0}) / (ComplexJet::constant(Complex{1.0, 0.0}) + v * v);
    };
    // |d^4/dx^4 (1+x^2)^{-1}| = 24 |5x^4 - 10x^2 + 1| / (1+x^2)^5 <= 120 / x^6 for x >= 2.
    a.derivative_tail_bound = [](double y) { return 24.0 / std::pow(y, 5); };
    a.magnitude_tail_bound = [](double y) { return 1.0 / y; };
    a.bounds_from = 2.0;
    a.feature_scale = 0.5;
    a.feature_end = 4.0;
    return a;
}

}  // namespace

TEST(Integrate, PolynomialIsExact) {
    const std::vector<double> bp = {0.0, 2.0};
    const auto r = quad::integrate([](double x) { return Complex{x * x * x - x, 0.0}; }, bp, 1e-12);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value.real(), 2.0, 1e-13);
}

TEST(Integrate, PeakedIntegrand) {
    // int_{-1}^{1} 1 / (x^2 + 1e-4) dx = 2 atan(100) / 1e-2
    const std::vector<double> bp = {-1.0, 1.0};
    const auto r = quad::integrate([](double x) { return Complex{1.0 / (x * x + 1e-4), 0.0}; }, bp, 1e-9);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value.real(), 200.0 * std::atan(100.0), 1e-8);
    EXPECT_LE(r.error, 1e-9);
    EXPECT_GT(r.panels, 1u);
}

TEST(Integrate, ComplexValued) {
    const std::vector<double> bp = {0.0, kPi};
    const auto r = quad::integrate([](double x) { return std::polar(1.0, 3.0 * x); }, bp, 1e-13);
    // int_0^pi e^{3ix} dx = (e^{3 i pi} - 1) / (3i) = 2i/3
    EXPECT_NEAR(r.value.real(), 0.0, 1e-13);
    EXPECT_NEAR(r.value.imag(), 2.0 / 3.0, 1e-13);
}

TEST(Integrate, ReportsExhaustedBudget) {
    const std::vector<double> bp = {0.0, 1.0};
    const auto r = quad::integrate([](double x) { return Complex{std::sin(1.0 / (x + 1e-6)), 0.0}; }, bp, 1e-14, 50);
    EXPECT_FALSE(r.converged);
    EXPECT_LE(r.panels, 50u);
}

TEST(Partition, RespectsQuarterPeriod) {
    const auto bp = quad::oscillation_partition(0.0, 50.0, 4.0, 0.1, 2.0);
    ASSERT_GE(bp.size(), 2u);
    EXPECT_EQ(bp.front(), 0.0);
    EXPECT_EQ(bp.back(), 50.0);
    for (std::size_t i = 1; i < bp.size(); ++i) {
        EXPECT_GT(bp[i], bp[i - 1]);
        EXPECT_LE(bp[i] - bp[i - 1], kPi / 16.0 + 1e-12);
    }
}

TEST(FourierIntegral, LorentzianCosineTransform) {
    const auto a = lorentzian();
    for (double w : {0.5, 1.0, 3.0, 10.0}) {
        const auto r = quad::fourier_integral(a, 0.0, w, 1e-10);
        ASSERT_TRUE(r.converged) << w;
        EXPECT_NEAR(r.value.real(), 0.5 * kPi * std::exp(-w), 1e-10) << w;
        EXPECT_LE(r.error, 1e-10);
    }
}

TEST(FourierIntegral, ZeroFrequency) {
    const auto a = lorentzian();
    const auto r = quad::fourier_integral(a, 0.0, 0.0, 1e-8, 400000);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.value.real(), 0.5 * kPi, 1e-8);
}

TEST(FourierIntegral, ExponentialAmplitude) {
    // int_1^inf e^{-x} e^{-iwx} dx = e^{-(1 + iw)} / (1 + iw)
    quad::FourierAmplitude a;
    a.value = [](double x) { return Complex{std::exp(-x), 0.0}; };
    a.jet = [](double x) { return exp(ComplexJet::variable(Complex{x, 0.0}) * Complex{-1.0, 0.0}); };
    a.derivative_tail_bound = [](double y) { return std::exp(-y); };
    a.magnitude_tail_bound = [](double y) { return std::exp(-y); };
    a.bounds_from = 1.0;
    a.feature_scale = 0.5;
    a.feature_end = 2.0;
    for (double w : {0.7, 2.0, 6.0}) {
        const Complex s{1.0, w};
        const Complex expected = std::exp(-s) / s;
        const auto r = quad::fourier_integral(a, 1.0, w, 1e-11);
        ASSERT_TRUE(r.converged);
        EXPECT_NEAR(std::abs(r.value - expected), 0.0, 1e-11) << w;
    }
}
