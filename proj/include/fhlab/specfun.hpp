#pragma once

// Gamma and Barnes G functions on the complex plane.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fhlab/numerics.hpp"

namespace fhlab {

inline constexpr double euler_gamma = std::numbers::egamma;

namespace detail {

inline bool is_nonpositive_integer(Complex z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Stirling series for large |z|; B_{2k} / (2k (2k-1)), k = 1..10
inline Complex log_gamma_stirling(Complex z)
{
    static constexpr std::array<double, 10> c = {
        1.0 / 12.0,           -1.0 / 360.0,       1.0 / 1260.0,        -1.0 / 1680.0,
        1.0 / 1188.0,         -691.0 / 360360.0,  1.0 / 156.0,         -3617.0 / 122400.0,
        43867.0 / 244188.0,   -174611.0 / 125400.0};
    const Complex iz = 1.0 / z;
    const Complex iz2 = iz * iz;
    Complex series = 0.0;
    Complex p = iz;
    for (double ck : c) {
        series += ck * p;
        p *= iz2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(two_pi) + series;
}

inline Complex log_gamma_unreduced(Complex z)
{
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_unreduced(1.0 - z);
    }
    Complex shift = 0.0;
    while (std::abs(z) < 16.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) - shift;
}

} // namespace detail

/// Principal value of log Gamma(z) (imaginary part in (-pi, pi]).
inline Complex log_gamma(Complex z)
{
    if (detail::is_nonpositive_integer(z)) throw std::domain_error("log_gamma: pole at non-positive integer");
    Complex v = detail::log_gamma_unreduced(z);
    return {v.real(), principal_arg(v.imag())};
}

namespace detail {

// Sum_{n > N} n^{-s} for integer s >= 2 by Euler-Maclaurin at the cut N.
inline double hurwitz_tail(int s, double N)
{
    const double sd = s;
    return std::pow(N, 1.0 - sd) / (sd - 1.0) - 0.5 * std::pow(N, -sd) +
           sd * std::pow(N, -sd - 1.0) / 12.0 -
           sd * (sd + 1.0) * (sd + 2.0) * std::pow(N, -sd - 3.0) / 720.0 +
           sd * (sd + 1.0) * (sd + 2.0) * (sd + 3.0) * (sd + 4.0) * std::pow(N, -sd - 5.0) / 30240.0;
}

// n log(1 + x/n) + x^2/(2n) - x = sum_{k>=3} (-1)^{k+1} x^k / (k n^{k-1})
inline Complex barnes_term(Complex x, int n)
{
    const double nd = n;
    if (std::abs(x) < 0.05 * nd) {
        const Complex r = x / nd;
        Complex pk = x * r * r; // x^k / n^{k-1}, k = 3
        Complex sum = 0.0;
        for (int k = 3; k < 40; ++k) {
            const Complex t = pk / double(k);
            sum += (k % 2 == 1) ? t : -t;
            if (std::abs(t) < 1e-18 * std::abs(sum)) break;
            pk *= r;
        }
        return sum;
    }
    return nd * std::log(1.0 + x / nd) + x * x / (2.0 * nd) - x;
}

// log G(1 + x) for 0 <= Re x < 1 from the Weierstrass product.
inline Complex log_barnes_base(Complex x)
{
    constexpr int N = 10000;
    Complex sum = 0.0;
    // small terms first
    for (int n = N; n >= 1; --n) sum += barnes_term(x, n);
    Complex tail = 0.0;
    Complex xk = x * x * x;
    for (int k = 3; k < 30; ++k) {
        const Complex t = xk / double(k) * hurwitz_tail(k - 1, double(N));
        tail += (k % 2 == 1) ? t : -t;
        if (std::abs(t) < 1e-20) break;
        xk *= x;
    }
    return 0.5 * x * std::log(two_pi) - 0.5 * (x * x * (euler_gamma + 1.0) + x) + sum + tail;
}

} // namespace detail

/// log G(z) for the Barnes G function. Zeros at z = 0, -1, -2, ... come back
/// as LogComplex::zero(). The phase is whatever the functional-equation
/// reduction accumulates; only exp() of it is meaningful.
inline LogComplex barnes_g_log(Complex z)
{
    if (detail::is_nonpositive_integer(z)) return LogComplex::zero();
    Complex w = z;
    Complex acc = 0.0;
    // G(w) = Gamma(w-1) G(w-1)
    while (w.real() >= 2.0) {
        w -= 1.0;
        acc += detail::log_gamma_unreduced(w);
    }
    // G(w) = G(w+1) / Gamma(w)
    while (w.real() < 1.0) {
        acc -= detail::log_gamma_unreduced(w);
        w += 1.0;
    }
    return LogComplex::from_log(acc + detail::log_barnes_base(w - 1.0));
}

/// log of G(1 + beta) G(1 - beta); exact zero for nonzero integer beta.
inline LogComplex fh_constant(Complex beta)
{
    return barnes_g_log(1.0 + beta) * barnes_g_log(1.0 - beta);
}

} // namespace fhlab
