#pragma once

// Truncated Taylor jets: a value together with its first N time derivatives.
// Closed-form modes are assembled from elementary jets so every derivative is
// an exact formula derivative (Leibniz rule), never a difference quotient.

#include <array>
#include <cmath>
#include <cstddef>

namespace susy_damp {

template <std::size_t N>
struct Jet {
    std::array<double, N + 1> d{};

    constexpr double value() const { return d[0]; }
    constexpr double operator[](std::size_t k) const { return d[k]; }
    constexpr double& operator[](std::size_t k) { return d[k]; }

    static constexpr Jet constant(double c) {
        Jet j;
        j.d[0] = c;
        return j;
    }

    /// The jet of a + b*t evaluated at t.
    static constexpr Jet affine(double a, double b, double t) {
        Jet j;
        j.d[0] = a + b * t;
        if constexpr (N >= 1) j.d[1] = b;
        return j;
    }

    template <std::size_t M>
    constexpr Jet<M> truncate() const {
        static_assert(M <= N);
        Jet<M> out;
        for (std::size_t k = 0; k <= M; ++k) out.d[k] = d[k];
        return out;
    }

    friend constexpr Jet operator+(Jet a, const Jet& b) {
        for (std::size_t k = 0; k <= N; ++k) a.d[k] += b.d[k];
        return a;
    }
    friend constexpr Jet operator-(Jet a, const Jet& b) {
        for (std::size_t k = 0; k <= N; ++k) a.d[k] -= b.d[k];
        return a;
    }
    friend constexpr Jet operator-(Jet a) {
        for (auto& x : a.d) x = -x;
        return a;
    }
    friend constexpr Jet operator*(double s, Jet a) {
        for (auto& x : a.d) x *= s;
        return a;
    }
    friend constexpr Jet operator*(Jet a, double s) { return s * a; }

    friend constexpr Jet operator*(const Jet& a, const Jet& b) {
        Jet out;
        for (std::size_t k = 0; k <= N; ++k) {
            double binom = 1.0;
            double acc = 0.0;
            for (std::size_t j = 0; j <= k; ++j) {
                acc += binom * a.d[j] * b.d[k - j];
                binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
            }
            out.d[k] = acc;
        }
        return out;
    }
};

/// exp(rate * t)
template <std::size_t N>
Jet<N> exp_jet(double rate, double t) {
    Jet<N> j;
    double e = std::exp(rate * t);
    for (std::size_t k = 0; k <= N; ++k) {
        j.d[k] = e;
        e *= rate;
    }
    return j;
}

/// cos(freq * t + phase)
template <std::size_t N>
Jet<N> cos_jet(double freq, double phase, double t) {
    const double c = std::cos(freq * t + phase);
    const double s = std::sin(freq * t + phase);
    const std::array<double, 4> cycle{c, -s, -c, s};
    Jet<N> j;
    double scale = 1.0;
    for (std::size_t k = 0; k <= N; ++k) {
        j.d[k] = scale * cycle[k % 4];
        scale *= freq;
    }
    return j;
}

/// sin(freq * t + phase)
template <std::size_t N>
Jet<N> sin_jet(double freq, double phase, double t) {
    const double c = std::cos(freq * t + phase);
    const double s = std::sin(freq * t + phase);
    const std::array<double, 4> cycle{s, c, -s, -c};
    Jet<N> j;
    double scale = 1.0;
    for (std::size_t k = 0; k <= N; ++k) {
        j.d[k] = scale * cycle[k % 4];
        scale *= freq;
    }
    return j;
}

/// cosh(rate * t + phase)
template <std::size_t N>
Jet<N> cosh_jet(double rate, double phase, double t) {
    const double c = std::cosh(rate * t + phase);
    const double s = std::sinh(rate * t + phase);
    Jet<N> j;
    double scale = 1.0;
    for (std::size_t k = 0; k <= N; ++k) {
        j.d[k] = scale * (k % 2 == 0 ? c : s);
        scale *= rate;
    }
    return j;
}

/// sinh(rate * t + phase)
template <std::size_t N>
Jet<N> sinh_jet(double rate, double phase, double t) {
    const double c = std::cosh(rate * t + phase);
    const double s = std::sinh(rate * t + phase);
    Jet<N> j;
    double scale = 1.0;
    for (std::size_t k = 0; k <= N; ++k) {
        j.d[k] = scale * (k % 2 == 0 ? s : c);
        scale *= rate;
    }
    return j;
}

}  // namespace susy_damp
