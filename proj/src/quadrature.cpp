#include "biatom/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "biatom/core.hpp"

namespace biatom::quad {

namespace {

// Nonnegative Kronrod nodes x_0 = 0 < x_1 < ... < x_10; the Gauss nodes are
// the odd-indexed ones.
struct Gk21 {
    std::array<double, 11> x{};
    std::array<double, 11> wk{};
    std::array<double, 5> wg{};

    Gk21() {
        using boost::math::quadrature::gauss;
        using boost::math::quadrature::gauss_kronrod;
        const auto& ax = gauss_kronrod<double, 21>::abscissa();
        const auto& w = gauss_kronrod<double, 21>::weights();
        const auto& g = gauss<double, 10>::weights();
        std::copy(ax.begin(), ax.end(), x.begin());
        std::copy(w.begin(), w.end(), wk.begin());
        std::copy(g.begin(), g.end(), wg.begin());
    }
};

const Gk21& rule() {
    static const Gk21 r;
    return r;
}

struct Panel {
    double a;
    double b;
    Complex value;
    double error;

    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel apply_rule(const std::function<Complex(double)>& f, double a, double b) {
    const auto& r = rule();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const Complex f0 = f(c);
    Complex kron = f0 * r.wk[0];
    Complex gauss{0.0, 0.0};
    double l1 = std::abs(f0) * r.wk[0];
    for (std::size_t i = 1; i < r.x.size(); ++i) {
        const Complex fp = f(c + h * r.x[i]);
        const Complex fm = f(c - h * r.x[i]);
        kron += (fp + fm) * r.wk[i];
        l1 += (std::abs(fp) + std::abs(fm)) * r.wk[i];
        if (i & 1U) gauss += (fp + fm) * r.wg[i / 2];
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double err = std::max(std::abs(kron - gauss) * h, 50.0 * eps * l1 * h);
    return {a, b, kron * h, err};
}

// Neumaier-compensated complex accumulator.
class Accumulator {
public:
    void add(Complex v) {
        add_part(re_, re_c_, v.real());
        add_part(im_, im_c_, v.imag());
    }
    Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& sum, double& comp, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

}  // namespace

Result integrate(const std::function<Complex(double)>& f, std::span<const double> breakpoints,
                 double tol, std::size_t max_panels) {
    Result result;
    if (breakpoints.size() < 2) return result;
    result.split_point = breakpoints.back();

    std::vector<Panel> heap;
    heap.reserve(breakpoints.size());
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) continue;
        heap.push_back(apply_rule(f, breakpoints[i], breakpoints[i + 1]));
        total_error += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end());

    std::vector<Panel> frozen;  // panels too narrow to bisect further
    while (total_error > tol && !heap.empty()) {
        if (heap.size() + frozen.size() >= max_panels) {
            result.converged = false;
            break;
        }
        std::pop_heap(heap.begin(), heap.end());
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);
            continue;
        }
        const Panel left = apply_rule(f, worst.a, mid);
        const Panel right = apply_rule(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }

    // Re-sum from scratch: the running error total drifts under cancellation.
    std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Accumulator acc;
    double err = 0.0;
    for (const auto* list : {&heap, &frozen}) {
        for (const auto& p : *list) {
            acc.add(p.value);
            err += p.error;
        }
    }
    result.value = acc.value();
    result.error = err;
    result.panels = heap.size() + frozen.size();
    if (!frozen.empty() && err > tol) result.converged = false;
    return result;
}

std::vector<double> oscillation_partition(double a, double b, double omega, double feature_scale,
                                          double feature_end) {
    const double quarter_period =
        omega > 0.0 ? kPi / (4.0 * omega) : std::numeric_limits<double>::infinity();
    std::vector<double> pts{a};
    double x = a;
    while (x < b) {
        double w = x < feature_end ? feature_scale : std::max(feature_scale, 0.5 * x);
        w = std::min(w, quarter_period);
        const double next = std::min(b, x + w);
        if (!(next > x)) break;
        x = next;
        pts.push_back(x);
    }
    if (pts.back() < b) pts.push_back(b);
    return pts;
}

Result fourier_integral(const FourierAmplitude& amplitude, double a, double omega, double tol,
                        std::size_t max_panels) {
    const double tail_tol = 0.25 * tol;
    const double quad_tol = 0.5 * tol;

    double y = std::max({a, amplitude.bounds_from, amplitude.feature_end});
    double ibp = std::numeric_limits<double>::infinity();
    double crude = std::numeric_limits<double>::infinity();
    bool found = false;
    for (int step = 0; step < 400; ++step) {
        ibp = omega > 0.0 ? amplitude.derivative_tail_bound(y) /
                                std::pow(omega, static_cast<double>(kTailTerms))
                          : std::numeric_limits<double>::infinity();
        crude = amplitude.magnitude_tail_bound(y);
        if (std::min(ibp, crude) <= tail_tol) {
            found = true;
            break;
        }
        y = std::max(1.25 * y, y + 1.0);
    }

    Result result;
    result.split_point = y;
    if (!found) {
        result.converged = false;
        result.error = std::min(ibp, crude);
        return result;
    }

    // Reject work that cannot fit the budget before building the partition.
    const double osc_panels = omega > 0.0 ? (y - a) * 4.0 * omega / kPi : 0.0;
    if (osc_panels > static_cast<double>(max_panels)) {
        result.converged = false;
        result.error = std::numeric_limits<double>::infinity();
        return result;
    }

    Complex tail{0.0, 0.0};
    double tail_error = crude;
    if (ibp <= crude) {
        tail_error = ibp;
        const ComplexJet jet = amplitude.jet(y);
        const Complex iw{0.0, omega};
        Complex denom = iw;
        for (std::size_t m = 0; m < kTailTerms; ++m) {
            tail += jet.derivative(m) / denom;
            denom *= iw;
        }
        tail *= std::polar(1.0, -omega * y);
    }

    Result body;
    if (y > a) {
        const auto pts = oscillation_partition(a, y, omega, amplitude.feature_scale,
                                               amplitude.feature_end);
        const auto& value = amplitude.value;
        body = integrate([&](double x) { return value(x) * std::polar(1.0, -omega * x); }, pts,
                         quad_tol, max_panels);
    }

    result.value = body.value + tail;
    result.error = body.error + tail_error;
    result.panels = body.panels;
    result.converged = body.converged;
    return result;
}

}  // namespace biatom::quad
