#pragma once

// Truncated Taylor series ("jets") for computing low-order derivatives of
// closed-form amplitudes exactly, without finite differences.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace biatom {

template <class T, std::size_t Order>
class Jet {
public:
    static constexpr std::size_t order = Order;

    constexpr Jet() { c_.fill(T{0}); }

    /// The identity jet x0 + h.
    static Jet variable(T x0) {
        Jet j;
        j.c_[0] = x0;
        if constexpr (Order >= 1) j.c_[1] = T{1};
        return j;
    }

    static Jet constant(T v) {
        Jet j;
        j.c_[0] = v;
        return j;
    }

    const T& operator[](std::size_t i) const { return c_[i]; }
    T& operator[](std::size_t i) { return c_[i]; }

    /// m-th derivative at the expansion point.
    T derivative(std::size_t m) const {
        double fact = 1.0;
        for (std::size_t i = 2; i <= m; ++i) fact *= static_cast<double>(i);
        return c_[m] * fact;
    }

    Jet& operator+=(const Jet& o) {
        for (std::size_t i = 0; i <= Order; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t i = 0; i <= Order; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Jet& operator*=(T s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, T s) { return a *= s; }
    friend Jet operator*(T s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, T s) {
        a.c_[0] += s;
        return a;
    }
    friend Jet operator-(Jet a, T s) {
        a.c_[0] -= s;
        return a;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t i = 0; i <= Order; ++i)
            for (std::size_t j = 0; i + j <= Order; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t k = 0; k <= Order; ++k) {
            T acc = a.c_[k];
            for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
            r.c_[k] = acc / b.c_[0];
        }
        return r;
    }

    friend Jet exp(const Jet& a) {
        using std::exp;
        Jet r;
        r.c_[0] = exp(a.c_[0]);
        // r' = a' r  =>  k r_k = sum_{j=1}^k j a_j r_{k-j}
        for (std::size_t k = 1; k <= Order; ++k) {
            T acc{0};
            for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c_[j] * r.c_[k - j];
            r.c_[k] = acc / static_cast<double>(k);
        }
        return r;
    }

private:
    std::array<T, Order + 1> c_;
};

}  // namespace biatom
