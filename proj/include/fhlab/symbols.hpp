#pragma once

// Symbols sigma(z) = (-z)^beta tau(z) with a single jump at theta = pi,
// their Fourier coefficients, pointwise values and range curves.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhlab/numerics.hpp"

namespace fhlab {

/// Finite Laurent polynomial sum_k c_k z^k.
struct LaurentPoly {
    std::map<int, Complex> terms;

    LaurentPoly() = default;
    LaurentPoly(std::initializer_list<std::pair<const int, Complex>> init) : terms(init) {}

    Complex operator()(Complex z) const
    {
        Complex s = 0.0;
        for (const auto& [k, c] : terms) s += c * std::pow(z, k);
        return s;
    }

    Complex on_circle(double theta) const
    {
        Complex s = 0.0;
        for (const auto& [k, c] : terms) s += c * std::polar(1.0, k * theta);
        return s;
    }

    Complex coeff(int k) const
    {
        auto it = terms.find(k);
        return it == terms.end() ? Complex(0.0) : it->second;
    }

    int min_index() const { return terms.empty() ? 0 : terms.begin()->first; }
    int max_index() const { return terms.empty() ? 0 : terms.rbegin()->first; }

    /// p(1/z)
    LaurentPoly reflected() const
    {
        LaurentPoly r;
        for (const auto& [k, c] : terms) r.terms[-k] = c;
        return r;
    }

    /// Coefficientwise conjugate.
    LaurentPoly conjugated() const
    {
        LaurentPoly r;
        for (const auto& [k, c] : terms) r.terms[k] = std::conj(c);
        return r;
    }

    bool is_zero() const
    {
        return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second == Complex(0.0); });
    }
};

enum class TauForm { exp_laurent, laurent };

/// Smooth factor tau: either exp(P) for a Laurent polynomial P, or a Laurent
/// polynomial itself.
struct TauSpec {
    TauForm form = TauForm::exp_laurent;
    LaurentPoly poly;

    static TauSpec one() { return {TauForm::exp_laurent, {}}; }
    static TauSpec exp_of(LaurentPoly p) { return {TauForm::exp_laurent, std::move(p)}; }
    static TauSpec polynomial(LaurentPoly p) { return {TauForm::laurent, std::move(p)}; }

    Complex operator()(Complex z) const { return form == TauForm::exp_laurent ? std::exp(poly(z)) : poly(z); }

    Complex on_circle(double theta) const
    {
        return form == TauForm::exp_laurent ? std::exp(poly.on_circle(theta)) : poly.on_circle(theta);
    }

    bool is_identity() const
    {
        if (form == TauForm::exp_laurent) return poly.is_zero();
        for (const auto& [k, c] : poly.terms)
            if (c != (k == 0 ? Complex(1.0) : Complex(0.0))) return false;
        return poly.coeff(0) == Complex(1.0);
    }

    TauSpec reflected() const { return {form, poly.reflected()}; }
    TauSpec conjugated() const { return {form, poly.conjugated()}; }
};

/// sigma(z) = (-z)^beta tau(z); the jump sits at theta = pi in the
/// e^{i beta (theta - theta_1)} form, i.e. at z = 1 here.
struct SymbolSpec {
    Complex beta = 0.0;
    TauSpec tau = TauSpec::one();

    static constexpr double theta1 = pi;

    bool integer_beta() const { return beta.imag() == 0.0 && beta.real() == std::round(beta.real()); }

    /// sigma(1/z) = (-z)^{-beta} tau(1/z)
    SymbolSpec reflected() const { return {-beta, tau.reflected()}; }

    /// (-z)^{-p} sigma, the same family with beta shifted by -p.
    SymbolSpec shifted(int p) const { return {beta - double(p), tau}; }
};

/// Two-sided coefficient table: coeffs[j] holds index offset + j.
struct FourierSeries {
    int offset = 0;
    std::vector<Complex> coeffs;
    double truncation_bound = 0.0;

    int min_index() const { return offset; }
    int max_index() const { return offset + int(coeffs.size()) - 1; }

    Complex operator[](int k) const
    {
        const long j = long(k) - offset;
        if (j < 0 || j >= long(coeffs.size())) return 0.0;
        return coeffs[std::size_t(j)];
    }

    Complex sum() const
    {
        Complex s = 0.0;
        for (auto c : coeffs) s += c;
        return s;
    }

    Complex on_circle(double theta) const
    {
        Complex s = 0.0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * std::polar(1.0, (offset + double(j)) * theta);
        return s;
    }
};

/// k-th Fourier coefficient of (-z)^beta under the arg in [-pi, pi) branch.
inline Complex jump_fourier(Complex beta, int k)
{
    if (beta.imag() == 0.0 && beta.real() == std::round(beta.real()))
        throw std::invalid_argument("jump_fourier: integer beta degenerates to a monomial");
    return std::sin(pi * beta) / (pi * (beta - double(k)));
}

namespace detail {

// Coefficients of g from samples on an M-point grid, read off for
// indices lo..hi (requires hi - lo < M).
inline std::vector<Complex> coefficients_from_samples(const std::vector<Complex>& samples, int lo, int hi)
{
    const int M = int(samples.size());
    std::vector<Complex> spec = fft(samples);
    std::vector<Complex> out;
    out.reserve(std::size_t(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) {
        int j = ((k % M) + M) % M;
        out.push_back(spec[std::size_t(j)] / double(M));
    }
    return out;
}

template <class G>
std::vector<Complex> sample_circle(G&& g, int M)
{
    std::vector<Complex> s(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) s[std::size_t(j)] = g(two_pi * j / M);
    return s;
}

} // namespace detail

/// tau-hat over [lo, hi]. exp_laurent values come from FFT sampling with the
/// grid doubled until aliasing is below 1e-14 relative.
inline FourierSeries tau_fourier(const TauSpec& tau, int lo, int hi)
{
    if (hi < lo) throw std::invalid_argument("tau_fourier: empty range");
    FourierSeries out;
    out.offset = lo;
    if (tau.form == TauForm::laurent) {
        for (int k = lo; k <= hi; ++k) out.coeffs.push_back(tau.poly.coeff(k));
        return out;
    }
    if (tau.poly.is_zero()) {
        for (int k = lo; k <= hi; ++k) out.coeffs.push_back(k == 0 ? 1.0 : 0.0);
        return out;
    }
    const int reach = std::max(std::abs(lo), std::abs(hi));
    int M = int(next_power_of_two(std::size_t(std::max(64, 2 * reach + 2))));
    auto g = [&](double t) { return tau.on_circle(t); };
    std::vector<Complex> prev = detail::coefficients_from_samples(detail::sample_circle(g, M), lo, hi);
    for (;;) {
        M *= 2;
        std::vector<Complex> next = detail::coefficients_from_samples(detail::sample_circle(g, M), lo, hi);
        double scale = 0.0, diff = 0.0;
        for (std::size_t j = 0; j < next.size(); ++j) {
            scale = std::max(scale, std::abs(next[j]));
            diff = std::max(diff, std::abs(next[j] - prev[j]));
        }
        prev = std::move(next);
        if (diff <= 1e-14 * std::max(scale, 1e-300) || M >= (1 << 22)) break;
    }
    out.coeffs = std::move(prev);
    return out;
}

/// Indices carrying tau-hat above 1e-16 of its peak; the rest is dropped
/// and its l1 mass returned as truncation_bound.
inline FourierSeries tau_support(const TauSpec& tau)
{
    if (tau.form == TauForm::laurent) {
        FourierSeries s = tau_fourier(tau, tau.poly.min_index(), tau.poly.max_index());
        return s;
    }
    int K = 16;
    for (;;) {
        FourierSeries s = tau_fourier(tau, -K, K);
        double peak = 0.0;
        for (auto c : s.coeffs) peak = std::max(peak, std::abs(c));
        const double cut = 1e-16 * peak;
        if (std::abs(s[-K]) < cut && std::abs(s[K]) < cut) {
            int lo = -K, hi = K;
            while (std::abs(s[lo]) < cut) ++lo;
            while (std::abs(s[hi]) < cut) --hi;
            FourierSeries t;
            t.offset = lo;
            for (int k = -K; k <= K; ++k) {
                if (k >= lo && k <= hi)
                    t.coeffs.push_back(s[k]);
                else
                    t.truncation_bound += std::abs(s[k]);
            }
            return t;
        }
        K *= 2;
    }
}

/// sigma-hat over [lo, hi] by convolving the jump coefficients with the
/// (truncated) tau-hat.
inline FourierSeries sigma_fourier(const SymbolSpec& spec, int lo, int hi)
{
    if (hi < lo) throw std::invalid_argument("sigma_fourier: empty range");
    FourierSeries out;
    out.offset = lo;
    out.coeffs.assign(std::size_t(hi - lo + 1), 0.0);
    if (spec.integer_beta()) {
        // (-z)^m tau(z) = (-1)^m z^m tau(z)
        const int m = int(std::lround(spec.beta.real()));
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        FourierSeries t = tau_fourier(spec.tau, lo - m, hi - m);
        for (int k = lo; k <= hi; ++k) out.coeffs[std::size_t(k - lo)] = sign * t[k - m];
        return out;
    }
    const FourierSeries t = tau_support(spec.tau);
    const Complex s = std::sin(pi * spec.beta) / pi;
    for (int k = lo; k <= hi; ++k) {
        Complex acc = 0.0;
        for (int m = t.min_index(); m <= t.max_index(); ++m) acc += t[m] / (spec.beta - double(k - m));
        out.coeffs[std::size_t(k - lo)] = s * acc;
    }
    // |J(beta, k)| <= |sin(pi beta)| / (pi dist(beta, Z))
    const double dist = std::abs(spec.beta - std::round(spec.beta.real()));
    out.truncation_bound = t.truncation_bound * std::abs(s) / std::max(dist, 1e-300);
    return out;
}

/// sigma(e^{i theta}) for theta in (0, 2 pi).
inline Complex eval_symbol(const SymbolSpec& spec, double theta)
{
    if (!(theta > 0.0 && theta < two_pi)) throw std::domain_error("eval_symbol: theta must lie in (0, 2pi)");
    return std::exp(Complex(0.0, 1.0) * spec.beta * (theta - pi)) * spec.tau.on_circle(theta);
}

enum class Side { right_of_zero, left_of_two_pi };

/// One-sided limits at the jump: theta -> 0+ or theta -> 2pi-.
inline Complex eval_symbol_limit(const SymbolSpec& spec, Side side)
{
    const double phase = side == Side::right_of_zero ? -pi : pi;
    return std::exp(Complex(0.0, phase) * spec.beta) * spec.tau.on_circle(0.0);
}

struct WindingResult {
    int winding = 0;
    double residual = 0.0; // |total/2pi - winding|
    double max_step = 0.0; // largest arg increment between samples
};

class winding_undefined : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Winding number of a closed sampled curve about the origin.
inline WindingResult winding_number(std::span<const Complex> curve)
{
    if (curve.size() < 3) throw std::invalid_argument("winding_number: need at least three points");
    const double scale = std::max(1.0, std::abs(curve.front()));
    if (std::abs(curve.front() - curve.back()) > 1e-9 * scale)
        throw std::invalid_argument("winding_number: curve is not closed");
    for (auto z : curve)
        if (std::abs(z) <= 1e-8) throw winding_undefined("winding_number: curve passes through the origin");
    double total = 0.0;
    WindingResult r;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const double step = std::arg(curve[i + 1] / curve[i]);
        r.max_step = std::max(r.max_step, std::abs(step));
        total += step;
    }
    const double turns = total / two_pi;
    r.winding = int(std::lround(turns));
    r.residual = std::abs(turns - r.winding);
    return r;
}

/// R_sigma: the range of sigma on an open uniform grid, closed by the chord
/// joining the two one-sided limits at the jump.
struct RangeCurve {
    std::vector<Complex> points; // closed: points.front() == points.back()
    std::size_t arc_count = 0;   // points[0, arc_count) lie on the closure of the range
};

inline RangeCurve range_curve(const SymbolSpec& spec, int resolution)
{
    if (resolution < 16) throw std::invalid_argument("range_curve: resolution must be at least 16");
    RangeCurve rc;
    const Complex start = eval_symbol_limit(spec, Side::right_of_zero);
    const Complex end = eval_symbol_limit(spec, Side::left_of_two_pi);
    rc.points.reserve(std::size_t(2 * resolution + 3));
    rc.points.push_back(start);
    for (int j = 0; j < resolution; ++j) rc.points.push_back(eval_symbol(spec, two_pi * (j + 0.5) / resolution));
    rc.points.push_back(end);
    rc.arc_count = rc.points.size();
    // chord sampled with the arc's typical spacing
    double arc_len = 0.0;
    for (std::size_t i = 1; i < rc.arc_count; ++i) arc_len += std::abs(rc.points[i] - rc.points[i - 1]);
    const double h = arc_len / resolution;
    const int chord_steps = std::max(1, int(std::ceil(std::abs(start - end) / std::max(h, 1e-300))));
    for (int j = 1; j < chord_steps; ++j) rc.points.push_back(end + (start - end) * (double(j) / chord_steps));
    rc.points.push_back(start);
    return rc;
}

struct ClassReport {
    bool continuous = true; // by construction of both tau families
    bool nonvanishing = false;
    double min_abs_tau = 0.0;
    bool winding_zero = false;
    int tau_winding = 0;
    bool smooth = true; // by construction
    std::string note;

    bool passed() const { return continuous && nonvanishing && winding_zero && smooth; }
};

/// Membership of tau in the class (continuous, nonvanishing, winding zero,
/// smooth) checked on 4096 samples.
inline ClassReport verify_class(const SymbolSpec& spec)
{
    constexpr int samples = 4096;
    ClassReport r;
    std::vector<Complex> curve(samples + 1);
    double mn = std::numeric_limits<double>::infinity();
    for (int j = 0; j < samples; ++j) {
        curve[std::size_t(j)] = spec.tau.on_circle(two_pi * j / samples);
        mn = std::min(mn, std::abs(curve[std::size_t(j)]));
    }
    curve[samples] = curve[0];
    r.min_abs_tau = mn;
    r.nonvanishing = mn > 1e-8;
    if (!r.nonvanishing) {
        r.note = "tau vanishes on the circle; winding undefined";
        return r;
    }
    try {
        WindingResult w = winding_number(curve);
        r.tau_winding = w.winding;
        r.winding_zero = w.winding == 0;
        if (w.max_step > pi / 2) r.note = "coarse sampling relative to tau's phase variation";
    } catch (const winding_undefined& e) {
        r.note = e.what();
    }
    return r;
}

} // namespace fhlab
