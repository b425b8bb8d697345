#pragma once

// Shared double-precision primitives: complex log-domain accumulation,
// radix-2 FFT, adaptive Gauss-Kronrod quadrature and least-squares lines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace fhlab {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduce an angle to (-pi, pi].
inline double principal_arg(double a)
{
    double r = std::remainder(a, two_pi);
    if (r <= -pi) r += two_pi;
    return r;
}

/// exp(log_abs + i*arg). The argument is never reduced during accumulation,
/// so products of many factors keep a continuous phase. log_abs == -inf
/// encodes an exact zero.
struct LogComplex {
    double log_abs = 0.0;
    double arg = 0.0;

    static LogComplex zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }

    static LogComplex from(Complex z)
    {
        if (z == Complex(0.0, 0.0)) return zero();
        return {std::log(std::abs(z)), std::arg(z)};
    }

    static LogComplex from_log(Complex log_value) { return {log_value.real(), log_value.imag()}; }

    bool is_zero() const { return std::isinf(log_abs) && log_abs < 0; }

    Complex log() const { return {log_abs, arg}; }

    Complex value() const
    {
        if (is_zero()) return {0.0, 0.0};
        return std::exp(Complex(log_abs, arg));
    }

    LogComplex& operator*=(const LogComplex& o)
    {
        if (is_zero() || o.is_zero()) {
            *this = zero();
            return *this;
        }
        log_abs += o.log_abs;
        arg += o.arg;
        return *this;
    }

    LogComplex& operator/=(const LogComplex& o)
    {
        if (o.is_zero()) throw std::domain_error("LogComplex: division by exact zero");
        if (is_zero()) return *this;
        log_abs -= o.log_abs;
        arg -= o.arg;
        return *this;
    }

    friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
    friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

    /// Integer or complex power in the log domain: exp(w * log).
    LogComplex pow(Complex w) const
    {
        if (is_zero()) return zero();
        return from_log(w * log());
    }
};

/// Determinants are carried end-to-end in log form.
using LogDet = LogComplex;

/// exp(a - b) - 1 with the phase difference taken mod 2 pi.
inline Complex log_ratio_minus_one(const LogComplex& a, const LogComplex& b)
{
    const double x = a.log_abs - b.log_abs;
    const double y = principal_arg(a.arg - b.arg);
    // exp(x + iy) - 1 = expm1(x) e^{iy} + (e^{iy} - 1), with e^{iy} - 1 = 2i sin(y/2) e^{iy/2}
    const Complex eiy_m1 = Complex(0.0, 2.0 * std::sin(0.5 * y)) * std::polar(1.0, 0.5 * y);
    return std::expm1(x) * std::polar(1.0, y) + eiy_m1;
}

/// Relative distance between two log-domain values: |exp(a - b) - 1|.
inline double log_relative_gap(const LogComplex& a, const LogComplex& b)
{
    if (a.is_zero() && b.is_zero()) return 0.0;
    if (a.is_zero() || b.is_zero()) return 1.0;
    return std::abs(log_ratio_minus_one(a, b));
}

// ---------------------------------------------------------------------------
// FFT

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

inline void fft_in_place(std::vector<Complex>& a, bool inverse)
{
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        // twiddles computed directly (not by repeated multiplication) to keep
        // the error at O(eps log n)
        std::vector<Complex> w(half);
        for (std::size_t k = 0; k < half; ++k)
            w[k] = std::polar(1.0, sign * two_pi * double(k) / double(len));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                Complex u = a[i + k];
                Complex v = a[i + k + half] * w[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
    if (inverse) {
        const double s = 1.0 / double(n);
        for (auto& x : a) x *= s;
    }
}

} // namespace detail

/// X_j = sum_m x_m exp(-2 pi i j m / N).
inline std::vector<Complex> fft(std::span<const Complex> samples)
{
    std::vector<Complex> a(samples.begin(), samples.end());
    detail::fft_in_place(a, false);
    return a;
}

/// Inverse of fft, normalized by 1/N.
inline std::vector<Complex> inverse_fft(std::span<const Complex> spectrum)
{
    std::vector<Complex> a(spectrum.begin(), spectrum.end());
    detail::fft_in_place(a, true);
    return a;
}

inline std::size_t next_power_of_two(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// ---------------------------------------------------------------------------
// Adaptive quadrature

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
    // Declared algebraic exponents: f(x) ~ (x - a)^alpha near a, (b - x)^alpha
    // near b. Only Re(alpha) matters; alpha must exceed -1. Points closer to an
    // endpoint than its ulp are dropped, which costs ~ulp^(1+alpha); for alpha
    // near -1 put the singularity at a left endpoint of 0.
    std::optional<double> singular_left;
    std::optional<double> singular_right;
};

struct QuadResult {
    Complex value;
    double error = 0.0;
    bool converged = true;
    int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod nodes (positive half) and weights with the embedded
// 7-point Gauss weights.
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    Complex value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod(F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex fc = Complex(f(c));
    Complex k = fc * gk_wk[7];
    Complex g = fc * gk_wg[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_x[i];
        Complex s = Complex(f(c - dx)) + Complex(f(c + dx));
        k += s * gk_wk[i];
        if (i % 2 == 1) g += s * gk_wg[i / 2];
    }
    return {a, b, k * h, std::abs((k - g) * h)};
}

template <class F>
QuadResult adaptive_plain(F& f, double a, double b, const QuadOptions& opt)
{
    std::priority_queue<Segment> heap;
    Segment s0 = gauss_kronrod(f, a, b);
    Complex total = s0.value;
    double err = s0.error;
    heap.push(s0);
    int n = 0;
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (n >= opt.max_subdivisions) return {total, err, false, n};
        Segment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) {
            // interval exhausted at machine resolution
            return {total, err, false, n};
        }
        Segment l = gauss_kronrod(f, s.a, m);
        Segment r = gauss_kronrod(f, m, s.b);
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
        ++n;
    }
    // recompute sums from scratch to shed accumulated cancellation
    Complex sum = 0.0;
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    return {sum, esum, true, n};
}

// x = a + L t^p maps t in [0,1] onto [a, a+L] and turns (x-a)^alpha into
// t^{p(1+alpha)-1}; p is chosen so that exponent is at least 1.
inline int weakening_power(double alpha)
{
    if (alpha <= -1.0) throw std::invalid_argument("adaptive_quad: endpoint exponent must exceed -1");
    if (alpha >= 1.0) return 1;
    return std::max(1, int(std::ceil(2.0 / (1.0 + alpha) - 1e-12)));
}

} // namespace detail

/// Integrate f over [a, b] to the requested tolerance. Declared endpoint
/// singularities are weakened by the substitution x = a + t^p.
template <class F>
QuadResult adaptive_quad(F&& f, double a, double b, const QuadOptions& opt = {})
{
    if (a == b) return {Complex(0.0), 0.0, true, 0};
    if (!opt.singular_left && !opt.singular_right) return detail::adaptive_plain(f, a, b, opt);

    const double mid = 0.5 * (a + b);
    QuadOptions half = opt;
    half.abs_tol = 0.5 * opt.abs_tol;
    half.singular_left.reset();
    half.singular_right.reset();

    QuadResult acc{Complex(0.0), 0.0, true, 0};
    // integral from an endpoint to the midpoint; the endpoint maps to t = 0
    auto piece = [&](double endpoint, std::optional<double> alpha) -> Complex {
        const double len = mid - endpoint;
        if (!alpha) {
            QuadResult r = len > 0 ? detail::adaptive_plain(f, endpoint, mid, half)
                                   : detail::adaptive_plain(f, mid, endpoint, half);
            acc.error += r.error;
            acc.converged = acc.converged && r.converged;
            acc.subdivisions += r.subdivisions;
            return len > 0 ? r.value : -r.value;
        }
        const int p = detail::weakening_power(*alpha);
        auto g = [&](double t) -> Complex {
            if (t <= 0.0) return 0.0;
            const double tp = std::pow(t, p);
            const double x = endpoint + len * tp;
            // the offset is below one ulp of the endpoint; the weight is negligible there
            if (x == endpoint) return 0.0;
            return Complex(f(x)) * (len * p * tp / t);
        };
        QuadResult r = detail::adaptive_plain(g, 0.0, 1.0, half);
        acc.error += r.error;
        acc.converged = acc.converged && r.converged;
        acc.subdivisions += r.subdivisions;
        return r.value;
    };

    const Complex left = piece(a, opt.singular_left);
    const Complex right = piece(b, opt.singular_right);
    acc.value = left - right;
    return acc;
}

// ---------------------------------------------------------------------------
// Least squares

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

inline LineFit linear_fit(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size()) throw std::invalid_argument("linear_fit: size mismatch");
    if (xs.size() < 2) throw std::invalid_argument("linear_fit: need at least two points");
    const double n = double(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: all abscissae identical");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
    return fit;
}

} // namespace fhlab
