#pragma once

// Wiener-Hopf factorization of tau, the Szego constants G[tau] and E[tau],
// the functions u = sigma_-/sigma_+ and v = 1/u with their Fourier
// coefficients, and the kernel quantities that control the inverse corner.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fhlab/numerics.hpp"
#include "fhlab/specfun.hpp"
#include "fhlab/symbols.hpp"

namespace fhlab {

namespace detail {

// Continuous log of tau on an M-point grid; throws if adjacent samples
// differ in phase by more than pi/2 (caller refines) or if the phase
// does not close up.
inline std::vector<Complex> unwrapped_log_samples(const TauSpec& tau, int M)
{
    std::vector<Complex> out(static_cast<std::size_t>(M));
    Complex prev = tau.on_circle(0.0);
    if (prev == Complex(0.0)) throw std::domain_error("log_tau: tau vanishes");
    double phase = std::arg(prev);
    out[0] = {std::log(std::abs(prev)), phase};
    for (int j = 1; j <= M; ++j) {
        const Complex cur = tau.on_circle(two_pi * j / M);
        if (cur == Complex(0.0)) throw std::domain_error("log_tau: tau vanishes");
        const double step = std::arg(cur / prev);
        if (std::abs(step) > pi / 2) throw std::range_error("log_tau: grid too coarse for branch tracking");
        phase += step;
        prev = cur;
        if (j < M) out[std::size_t(j)] = {std::log(std::abs(cur)), phase};
    }
    if (std::abs(phase - out[0].imag()) > pi) throw std::domain_error("log_tau: tau has nonzero winding number");
    return out;
}

} // namespace detail

/// (log tau)-hat over [lo, hi]. Exact for exp_laurent; FFT of the
/// branch-tracked logarithm (grid doubled until stable) for laurent.
inline FourierSeries log_tau_fourier(const TauSpec& tau, int lo, int hi)
{
    if (hi < lo) throw std::invalid_argument("log_tau_fourier: empty range");
    FourierSeries out;
    out.offset = lo;
    if (tau.form == TauForm::exp_laurent) {
        for (int k = lo; k <= hi; ++k) out.coeffs.push_back(tau.poly.coeff(k));
        return out;
    }
    const int reach = std::max(std::abs(lo), std::abs(hi));
    int M = int(next_power_of_two(std::size_t(std::max(128, 2 * reach + 2))));
    std::vector<Complex> prev;
    for (;;) {
        std::vector<Complex> samples;
        try {
            samples = detail::unwrapped_log_samples(tau, M);
        } catch (const std::range_error&) {
            if (M >= (1 << 22)) throw;
            M *= 2;
            continue;
        }
        std::vector<Complex> next = detail::coefficients_from_samples(samples, lo, hi);
        if (!prev.empty()) {
            double scale = 0.0, diff = 0.0;
            for (std::size_t j = 0; j < next.size(); ++j) {
                scale = std::max(scale, std::abs(next[j]));
                diff = std::max(diff, std::abs(next[j] - prev[j]));
            }
            if (diff <= 1e-14 * std::max(scale, 1.0) || M >= (1 << 22)) {
                out.coeffs = std::move(next);
                return out;
            }
        }
        prev = std::move(next);
        M *= 2;
    }
}

/// Symmetric window [-K, K] of (log tau)-hat beyond which coefficients are
/// below 1e-17 of the peak (exact support for exp_laurent).
inline FourierSeries log_tau_series(const TauSpec& tau)
{
    if (tau.form == TauForm::exp_laurent) {
        const int K = std::max({1, std::abs(tau.poly.min_index()), std::abs(tau.poly.max_index())});
        return log_tau_fourier(tau, -K, K);
    }
    int K = 32;
    for (;;) {
        FourierSeries s = log_tau_fourier(tau, -K, K);
        double peak = 0.0;
        for (int k = -K; k <= K; ++k)
            if (k != 0) peak = std::max(peak, std::abs(s[k]));
        const double edge = std::max(std::abs(s[-K]), std::abs(s[K]));
        if (edge <= 1e-17 * std::max(peak, 1e-300) || K >= (1 << 16)) return s;
        K *= 2;
    }
}

/// G[tau] = exp((log tau)-hat(0)).
inline LogComplex geometric_mean(const TauSpec& tau)
{
    return LogComplex::from_log(log_tau_fourier(tau, 0, 0)[0]);
}

/// E[tau] = exp(sum_{k >= 1} k (log tau)-hat(k) (log tau)-hat(-k)).
inline LogComplex szego_constant(const TauSpec& tau)
{
    const FourierSeries a = log_tau_series(tau);
    const int K = a.max_index();
    // small terms first
    Complex s = 0.0;
    for (int k = K; k >= 1; --k) s += double(k) * a[k] * a[-k];
    return LogComplex::from_log(s);
}

/// log of (tau_+(1) / tau_-(1))^beta with the mean split evenly, i.e.
/// beta * sum_{k >= 1} ((log tau)-hat(k) - (log tau)-hat(-k)). This is the
/// jump's coupling to tau at z = 1; it vanishes when log tau is even.
inline Complex log_jump_coupling(const TauSpec& tau, Complex beta)
{
    if (beta == Complex(0.0)) return 0.0;
    const FourierSeries a = log_tau_series(tau);
    Complex s = 0.0;
    for (int k = std::max(a.max_index(), -a.min_index()); k >= 1; --k) s += a[k] - a[-k];
    return beta * s;
}

/// tau = tau_- tau_+, both sharing exp((log tau)-hat(0)/2).
struct Factorization {
    FourierSeries tau_plus;  // indices >= 0
    FourierSeries tau_minus; // indices <= 0
    Complex log_g_mean;
    FourierSeries log_tau; // the coefficients the factors were built from
    double reconvolution_residual = 0.0;

    /// log tau_+(e^{i theta}) - a0/2 = sum_{k > 0} a_k e^{ik theta}
    Complex log_plus_on_circle(double theta) const
    {
        Complex s = 0.0;
        for (int k = 1; k <= log_tau.max_index(); ++k) s += log_tau[k] * std::polar(1.0, k * theta);
        return s;
    }

    Complex log_minus_on_circle(double theta) const
    {
        Complex s = 0.0;
        for (int k = 1; k <= -log_tau.min_index(); ++k) s += log_tau[-k] * std::polar(1.0, -k * theta);
        return s;
    }

    Complex plus_at_one() const
    {
        Complex s = 0.5 * log_g_mean;
        for (int k = 1; k <= log_tau.max_index(); ++k) s += log_tau[k];
        return std::exp(s);
    }

    Complex minus_at_one() const
    {
        Complex s = 0.5 * log_g_mean;
        for (int k = 1; k <= -log_tau.min_index(); ++k) s += log_tau[-k];
        return std::exp(s);
    }
};

namespace detail {

// Taylor coefficients of exp(g) for a power series g with g_0 given,
// via f' = g' f: n f_n = sum_{k=1}^n k g_k f_{n-k}.
inline std::vector<Complex> exp_power_series(const std::vector<Complex>& g)
{
    std::vector<Complex> f{std::exp(g.empty() ? Complex(0.0) : g[0])};
    double peak = std::abs(f[0]);
    int quiet = 0;
    for (int n = 1; n < 100000; ++n) {
        Complex acc = 0.0;
        const int kmax = std::min<int>(n, int(g.size()) - 1);
        for (int k = 1; k <= kmax; ++k) acc += double(k) * g[std::size_t(k)] * f[std::size_t(n - k)];
        f.push_back(acc / double(n));
        peak = std::max(peak, std::abs(f.back()));
        if (n >= int(g.size()) && std::abs(f.back()) < 1e-17 * peak) {
            if (++quiet >= 8) break;
        } else {
            quiet = 0;
        }
    }
    return f;
}

} // namespace detail

inline Factorization wiener_hopf(const TauSpec& tau)
{
    Factorization fz;
    fz.log_tau = log_tau_series(tau);
    fz.log_g_mean = fz.log_tau[0];
    const int K = fz.log_tau.max_index();

    std::vector<Complex> gp(std::size_t(K + 1)), gm(std::size_t(K + 1));
    gp[0] = gm[0] = 0.5 * fz.log_g_mean;
    for (int k = 1; k <= K; ++k) {
        gp[std::size_t(k)] = fz.log_tau[k];
        gm[std::size_t(k)] = fz.log_tau[-k];
    }
    std::vector<Complex> fp = detail::exp_power_series(gp);
    std::vector<Complex> fm = detail::exp_power_series(gm);

    fz.tau_plus.offset = 0;
    fz.tau_plus.coeffs = fp;
    fz.tau_minus.offset = -int(fm.size()) + 1;
    fz.tau_minus.coeffs.assign(fm.rbegin(), fm.rend());

    // reconvolution against tau-hat on the combined support
    const int lo = fz.tau_minus.min_index();
    const int hi = fz.tau_plus.max_index();
    const FourierSeries th = tau_fourier(tau, lo, hi);
    for (int k = lo; k <= hi; ++k) {
        Complex c = 0.0;
        for (int m = 0; m <= hi; ++m) c += fz.tau_plus[m] * fz.tau_minus[k - m];
        fz.reconvolution_residual = std::max(fz.reconvolution_residual, std::abs(c - th[k]));
    }
    return fz;
}

// ---------------------------------------------------------------------------
// u and v

namespace detail {

inline void require_strip(Complex beta, const char* who)
{
    if (!(std::abs(beta.real()) < 0.5)) throw std::domain_error(std::string(who) + ": requires |Re beta| < 1/2");
}

// (1/2pi) int_0^{2pi} (2 - 2cos t)^{power} exp(sign * (log tau_- - log tau_+)) e^{-i n t} dt
inline Complex uv_coefficient(const Factorization& fz, Complex power, double sign, int n)
{
    auto f = [&](double t) -> Complex {
        // 2 - 2cos t = 4 sin^2(t/2), kept accurate near both ends
        const double s = 2.0 * std::sin(0.5 * t);
        const double base = s * s;
        if (base <= 0.0) return 0.0;
        const Complex lr = fz.log_minus_on_circle(t) - fz.log_plus_on_circle(t);
        return std::exp(power * std::log(base) + sign * lr - Complex(0.0, n * t));
    };
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-11;
    opt.max_subdivisions = 20000;
    // fold [pi, 2pi] onto [-pi, 0] so both singular ends sit at t = 0, where
    // the distance to the singularity is carried exactly
    opt.singular_left = 2.0 * power.real();
    QuadResult left = adaptive_quad(f, 0.0, pi, opt);
    QuadResult right = adaptive_quad([&](double t) { return f(-t); }, 0.0, pi, opt);
    return (left.value + right.value) / two_pi;
}

} // namespace detail

/// u-hat(n) for u = (2 - 2cos)^{-beta} tau_- / tau_+.
inline Complex u_fourier(const SymbolSpec& spec, const Factorization& fz, int n)
{
    detail::require_strip(spec.beta, "u_fourier");
    return detail::uv_coefficient(fz, -spec.beta, 1.0, n);
}

inline Complex u_fourier(const SymbolSpec& spec, int n) { return u_fourier(spec, wiener_hopf(spec.tau), n); }

/// v-hat(m) for v = 1/u; the asymptotic statements concern m = -n.
inline Complex v_fourier(const SymbolSpec& spec, const Factorization& fz, int m)
{
    detail::require_strip(spec.beta, "v_fourier");
    return detail::uv_coefficient(fz, spec.beta, -1.0, m);
}

inline Complex v_fourier(const SymbolSpec& spec, int m) { return v_fourier(spec, wiener_hopf(spec.tau), m); }

/// Leading coefficients of u-hat(n) ~ c0 n^{-1+2beta} and
/// v-hat(-n) ~ c0' n^{-1-2beta}.
struct CConstants {
    Complex c0;
    Complex c0_prime;
};

inline CConstants c_constants(Complex beta, const Factorization& fz)
{
    const Complex one_minus = 1.0 - 2.0 * beta;
    const Complex one_plus = 1.0 + 2.0 * beta;
    if (detail::is_nonpositive_integer(one_minus) || detail::is_nonpositive_integer(one_plus))
        throw std::domain_error("c_constants: Gamma pole at 1 +/- 2 beta");
    const Complex s = std::sin(pi * beta) / pi;
    const Complex ratio = fz.minus_at_one() / fz.plus_at_one();
    CConstants c;
    c.c0 = std::exp(log_gamma(one_minus)) * s * ratio;
    // v = (2 - 2cos)^{beta} ..., whose coefficients carry -sin(pi beta)
    c.c0_prime = -std::exp(log_gamma(one_plus)) * s / ratio;
    return c;
}

struct UAsymptoticsRow {
    int n = 0;
    Complex u_hat;
    Complex u_ratio; // u-hat(n) n^{1-2beta} / c0
    Complex v_hat;   // v-hat(-n)
    Complex v_ratio; // v-hat(-n) n^{1+2beta} / c0'
};

inline std::vector<UAsymptoticsRow> check_u_asymptotics(const SymbolSpec& spec, std::span<const int> n_list)
{
    detail::require_strip(spec.beta, "check_u_asymptotics");
    if (spec.beta == Complex(0.0)) throw std::domain_error("check_u_asymptotics: beta must be nonzero");
    const Factorization fz = wiener_hopf(spec.tau);
    const CConstants c = c_constants(spec.beta, fz);
    std::vector<UAsymptoticsRow> rows;
    for (int n : n_list) {
        UAsymptoticsRow r;
        r.n = n;
        r.u_hat = u_fourier(spec, fz, n);
        r.v_hat = v_fourier(spec, fz, -n);
        r.u_ratio = r.u_hat * std::pow(double(n), 1.0 - 2.0 * spec.beta) / c.c0;
        r.v_ratio = r.v_hat * std::pow(double(n), 1.0 + 2.0 * spec.beta) / c.c0_prime;
        rows.push_back(r);
    }
    return rows;
}

/// Truncated entry of VU (indices i, j <= 0):
/// sum_{k=1}^{K} u-hat(k + n - j) v-hat(i - n - k).
struct VUEntry {
    Complex value;         // truncated sum
    Complex tail_estimate; // leading-order tail sum_{k > K} c0 c0' (n+k-j)^{-1+2b} (n+k-i)^{-1-2b}
    double tail_bound = 0; // |c0 c0'| * 2 / (n + K + 1 - max(i, j)) (factor 2 for the o-term)
};

inline VUEntry vu_entry(const SymbolSpec& spec, int i, int j, int n, int k_max)
{
    detail::require_strip(spec.beta, "vu_entry");
    if (i > 0 || j > 0) throw std::invalid_argument("vu_entry: indices must be <= 0");
    if (k_max < 1) throw std::invalid_argument("vu_entry: k_max must be >= 1");
    const Factorization fz = wiener_hopf(spec.tau);
    VUEntry e;
    for (int k = 1; k <= k_max; ++k) e.value += u_fourier(spec, fz, k + n - j) * v_fourier(spec, fz, i - n - k);
    if (spec.beta == Complex(0.0)) return e;
    const CConstants c = c_constants(spec.beta, fz);
    const Complex cc = c.c0 * c.c0_prime;
    // Euler-Maclaurin for the tail of the leading-order summand
    auto term = [&](double k) {
        return std::pow(n + k - j, -1.0 + 2.0 * spec.beta) * std::pow(n + k - i, -1.0 - 2.0 * spec.beta);
    };
    QuadOptions opt;
    opt.abs_tol = 1e-14;
    const double K = k_max;
    auto integrand = [&](double t) -> Complex {
        // k = K + t / (1 - t) maps [0, 1) onto [K, inf)
        if (t >= 1.0) return 0.0;
        const double k = K + t / (1.0 - t);
        return term(k) / ((1.0 - t) * (1.0 - t));
    };
    const Complex integral = adaptive_quad(integrand, 0.0, 1.0, opt).value;
    e.tail_estimate = cc * (integral - 0.5 * term(K));
    e.tail_bound = 2.0 * std::abs(cc) / (n + K + 1 - std::max(i, j));
    return e;
}

// ---------------------------------------------------------------------------
// Kernel symbol

/// Closed-form symbol of the limiting Wiener-Hopf kernel:
/// -sin^2(pi beta) / (cosh^2(pi xi) - sin^2(pi beta)).
inline Complex kernel_hat_closed(Complex beta, double xi)
{
    detail::require_strip(beta, "kernel_hat_closed");
    const Complex s = std::sin(pi * beta);
    const double ch = std::cosh(pi * xi);
    return -s * s / (ch * ch - s * s);
}

/// k(x) = c0 c0' e^{(1/2+beta)x} int_0^inf (z+1)^{-1+2beta} (z+e^x)^{-1-2beta} dz.
/// The product c0 c0' is independent of tau.
inline Complex kernel_function(Complex beta, double x)
{
    detail::require_strip(beta, "kernel_function");
    const Complex s = std::sin(pi * beta) / pi;
    const Complex cc = -std::exp(log_gamma(1.0 - 2.0 * beta) + log_gamma(1.0 + 2.0 * beta)) * s * s;
    // z = e^t; every factor handled in the log domain
    auto softplus = [](double a, double b) { // log(e^a + e^b)
        const double m = std::max(a, b);
        return m + std::log1p(std::exp(-std::abs(a - b)));
    };
    auto f = [&](double t) -> Complex {
        const double l1 = softplus(t, 0.0);
        const double l2 = softplus(t, x);
        return std::exp((0.5 + beta) * x + (-1.0 + 2.0 * beta) * l1 + (-1.0 - 2.0 * beta) * l2 + t);
    };
    const double lo = std::min(0.0, x) - 45.0;
    const double hi = std::max(0.0, x) + 45.0;
    QuadOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-12;
    // the bulk sits between 0 and x; split there to help the adaptivity
    Complex total = adaptive_quad(f, lo, std::min(0.0, x), opt).value;
    if (x != 0.0) total += adaptive_quad(f, std::min(0.0, x), std::max(0.0, x), opt).value;
    total += adaptive_quad(f, std::max(0.0, x), hi, opt).value;
    return cc * total;
}

struct KernelTransform {
    std::vector<double> xi;
    std::vector<Complex> value;
    double x_cutoff = 0.0;
    double step = 0.0;
    double tail_bound = 0.0;
};

/// k-hat(xi) = int k(x) e^{-i xi x} dx by the trapezoidal rule on
/// |x| <= X; k decays like e^{-(1/2 - |Re beta|)|x|}, which fixes X.
inline KernelTransform kernel_hat_numeric(Complex beta, std::span<const double> xi_grid, double step = 0.125)
{
    detail::require_strip(beta, "kernel_hat_numeric");
    const double decay = 0.5 - std::abs(beta.real());
    KernelTransform kt;
    kt.xi.assign(xi_grid.begin(), xi_grid.end());
    kt.step = step;
    kt.x_cutoff = std::ceil(32.0 / decay);
    const int m = int(std::ceil(kt.x_cutoff / step));
    std::vector<double> xs;
    std::vector<Complex> ks;
    for (int j = -m; j <= m; ++j) {
        xs.push_back(j * step);
        ks.push_back(kernel_function(beta, j * step));
    }
    kt.tail_bound = (std::abs(ks.front()) + std::abs(ks.back())) / decay;
    for (double xi : kt.xi) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < xs.size(); ++j) acc += ks[j] * std::polar(1.0, -xi * xs[j]);
        kt.value.push_back(acc * step);
    }
    return kt;
}

} // namespace fhlab
