#pragma once

// Predicted determinant asymptotics, the exact pure-jump determinant, ratio
// sweeps, exponent fits, the inverse-minor identity and the corner-block
// scaling law.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhlab/numerics.hpp"
#include "fhlab/specfun.hpp"
#include "fhlab/symbols.hpp"
#include "fhlab/szego.hpp"
#include "fhlab/toeplitz.hpp"

namespace fhlab {

/// Which determinant constant to use. The published form is
/// G(1+beta) G(1-beta) E[tau]; for tau_+(1) != tau_-(1) the determinants
/// converge instead to that times (tau_+(1)/tau_-(1))^beta, which is the
/// default here.
enum class ConstantForm { coupled, published };

/// log D_n ~ (n+1) log G[tau] - beta^2 log n + log[G(1+beta) G(1-beta) E[tau]] (+ coupling).
struct AsymptoticPrediction {
    Complex log_g_mean;
    Complex beta_sq;
    LogComplex log_constant;
    Complex log_coupling; // included in log_constant unless the published form was asked for
    bool integer_beta = false; // constant vanishes for beta in Z \ {0}

    LogDet at(int n) const
    {
        if (n < 2) throw std::invalid_argument("prediction: n must be >= 2");
        if (log_constant.is_zero()) return LogDet::zero();
        return LogComplex::from_log(double(n + 1) * log_g_mean - beta_sq * std::log(double(n))) * log_constant;
    }
};

inline AsymptoticPrediction make_prediction(const SymbolSpec& spec, ConstantForm form = ConstantForm::coupled)
{
    AsymptoticPrediction p;
    p.log_g_mean = geometric_mean(spec.tau).log();
    p.beta_sq = spec.beta * spec.beta;
    p.integer_beta = spec.integer_beta() && spec.beta != Complex(0.0);
    p.log_coupling = log_jump_coupling(spec.tau, spec.beta);
    p.log_constant = fh_constant(spec.beta) * szego_constant(spec.tau);
    if (form == ConstantForm::coupled) p.log_constant *= LogComplex::from_log(p.log_coupling);
    return p;
}

inline LogDet predict_logdet(const SymbolSpec& spec, int n, ConstantForm form = ConstantForm::coupled)
{
    return make_prediction(spec, form).at(n);
}

// ---------------------------------------------------------------------------
// Exact pure jump

/// log D_k[(-z)^beta] for k = 0..n from the Cauchy determinant
/// det[1/(x_i + y_j)] with x_i = beta - i, y_j = j. Growing the matrix by one
/// row and column multiplies the determinant by
///   (sin(pi beta)/pi) (-1)^N (N!)^2 / (prod_{m=0}^{N} (beta - m) prod_{m=1}^{N} (beta + m)),
/// accumulated here as sum_m log(m^2 / (m^2 - beta^2)) with a principal
/// phase per increment.
inline std::vector<LogDet> pure_jump_exact_logdets(Complex beta, int n)
{
    if (beta.imag() == 0.0 && beta.real() == std::round(beta.real()))
        throw std::invalid_argument("pure_jump_exact_logdet: beta must not be an integer");
    if (n < 0) throw std::invalid_argument("pure_jump_exact_logdet: n must be non-negative");
    const Complex head = std::log(std::sin(pi * beta) / (pi * beta));
    const Complex b2 = beta * beta;
    std::vector<LogDet> out;
    out.reserve(std::size_t(n + 1));
    LogDet acc;
    for (int N = 0; N <= n; ++N) {
        Complex inc = head;
        for (int m = 1; m <= N; ++m) {
            const double m2 = double(m) * double(m);
            // (-1) m^2 / ((beta - m)(beta + m))
            inc += std::log(m2 / (m2 - b2));
        }
        acc *= LogComplex{inc.real(), principal_arg(inc.imag())};
        out.push_back(acc);
    }
    return out;
}

inline LogDet pure_jump_exact_logdet(Complex beta, int n) { return pure_jump_exact_logdets(beta, n).back(); }

// ---------------------------------------------------------------------------
// Sweeps

enum class DetSource { cauchy_oracle, levinson, dense_lu };

inline const char* to_string(DetSource s)
{
    switch (s) {
    case DetSource::cauchy_oracle: return "cauchy";
    case DetSource::levinson: return "levinson";
    case DetSource::dense_lu: return "lu";
    }
    return "?";
}

struct SweepRow {
    int n = 0;
    LogDet logdet;
    LogDet prediction;
    Complex ratio_minus_one; // exp(logdet - prediction) - 1
    DetSource source = DetSource::levinson;
    bool phase_ambiguous = false;
};

namespace detail {

inline bool is_ascending_positive(std::span<const int> ns)
{
    if (ns.empty() || ns.front() < 0) return false;
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1]) return false;
    return true;
}

inline Complex ratio_minus_one(const LogDet& d, const LogDet& p)
{
    if (p.is_zero()) return {std::nan(""), std::nan("")};
    if (d.is_zero()) return -1.0;
    return log_ratio_minus_one(d, p);
}

inline double unwrap_near(double phase, double reference)
{
    return reference + principal_arg(phase - reference);
}

} // namespace detail

/// log D_n for every n in the list: exact Cauchy formula when tau = 1,
/// otherwise the Levinson recursion with dense LU for sizes past a
/// breakdown. Phases are continuous along the list.
inline std::vector<std::pair<LogDet, DetSource>> determinant_sweep(const SymbolSpec& spec, std::span<const int> ns)
{
    if (!detail::is_ascending_positive(ns)) throw std::invalid_argument("sweep: n list must be ascending and non-negative");
    std::vector<std::pair<LogDet, DetSource>> out;
    if (spec.tau.is_identity() && !spec.integer_beta()) {
        const auto all = pure_jump_exact_logdets(spec.beta, ns.back());
        for (int n : ns) out.emplace_back(all[std::size_t(n)], DetSource::cauchy_oracle);
        return out;
    }
    const ToeplitzMatrix big = build(spec, ns.back());
    const LevinsonResult lev = logdet_levinson(big);
    double prev_phase = 0.0;
    bool have_prev = false;
    for (int n : ns) {
        if (n < int(lev.logdets.size())) {
            out.emplace_back(lev.logdets[std::size_t(n)], DetSource::levinson);
        } else {
            // leading n+1 generators of the big matrix
            ToeplitzMatrix t;
            t.n = n;
            t.column.assign(big.column.begin(), big.column.begin() + n + 1);
            t.row.assign(big.row.begin(), big.row.begin() + n + 1);
            LogDet d = logdet_lu(t);
            if (have_prev && !d.is_zero()) d.arg = detail::unwrap_near(d.arg, prev_phase);
            out.emplace_back(d, DetSource::dense_lu);
        }
        if (!out.back().first.is_zero()) {
            prev_phase = out.back().first.arg;
            have_prev = true;
        }
    }
    return out;
}

inline std::vector<SweepRow> ratio_sweep(const SymbolSpec& spec, std::span<const int> ns,
                                         ConstantForm form = ConstantForm::coupled)
{
    const auto dets = determinant_sweep(spec, ns);
    const AsymptoticPrediction pred = make_prediction(spec, form);
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        SweepRow r;
        r.n = ns[i];
        r.logdet = dets[i].first;
        r.source = dets[i].second;
        r.prediction = pred.at(std::max(ns[i], 2));
        r.ratio_minus_one = detail::ratio_minus_one(r.logdet, r.prediction);
        if (i > 0 && !r.logdet.is_zero() && !rows.back().logdet.is_zero())
            r.phase_ambiguous = std::abs(r.logdet.arg - rows.back().logdet.arg) > pi;
        rows.push_back(r);
    }
    return rows;
}

struct ExponentFit {
    Complex slope;       // estimate of -beta^2
    LineFit real_fit;    // log|D_n| - (n+1) Re log G  vs  log n
    LineFit imag_fit;    // arg D_n - (n+1) Im log G   vs  log n
    bool phase_ambiguous = false;
};

/// Log-log slope of D_n / G[tau]^{n+1}.
inline ExponentFit fit_exponent(const SymbolSpec& spec, std::span<const int> ns)
{
    if (ns.size() < 4) throw std::invalid_argument("fit_exponent: need at least four sizes");
    if (double(ns.back()) < 4.0 * double(std::max(ns.front(), 1))) throw std::invalid_argument("fit_exponent: sizes must span two octaves");
    const auto dets = determinant_sweep(spec, ns);
    const Complex lg = geometric_mean(spec.tau).log();
    std::vector<double> xs, yr, yi;
    ExponentFit fit;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const LogDet& d = dets[i].first;
        if (d.is_zero()) throw std::domain_error("fit_exponent: vanishing determinant");
        xs.push_back(std::log(double(ns[i])));
        yr.push_back(d.log_abs - double(ns[i] + 1) * lg.real());
        yi.push_back(d.arg - double(ns[i] + 1) * lg.imag());
        if (i > 0 && std::abs(yi.back() - yi[yi.size() - 2]) > pi) fit.phase_ambiguous = true;
    }
    fit.real_fit = linear_fit(xs, yr);
    fit.imag_fit = linear_fit(xs, yi);
    fit.slope = {fit.real_fit.slope, fit.imag_fit.slope};
    return fit;
}

// ---------------------------------------------------------------------------
// Inverse minors

struct JacobiReport {
    LogDet lhs; // D_{n-p}[(-z)^{-p} sigma]
    LogDet rhs; // det X D_n[sigma]
    double residual = 0.0;
};

/// D_{n-p}[(-z)^{-p} sigma] = det X D_n[sigma]. The cofactor sign of
/// Jacobi's theorem for this block is (-1)^{np}, which cancels the
/// (-1)^{(n-p+1)p} from rewriting z^{-p} as (-z)^{-p}.
inline JacobiReport jacobi_check(const SymbolSpec& spec, int n, int p)
{
    if (p < 1 || p > std::min(n, 4)) throw std::invalid_argument("jacobi_check: need 1 <= p <= min(n, 4)");
    const ToeplitzMatrix t = build(spec, n);
    const CornerBlock x = inverse_corner(t, p);
    JacobiReport r;
    r.lhs = logdet_lu(build(spec.shifted(p), n - p));
    r.rhs = logdet_dense(x.entries) * logdet_lu(t);
    r.residual = log_relative_gap(r.lhs, r.rhs);
    return r;
}

struct CornerScalingRow {
    int n = 0;
    LogDet det_x;
    LogComplex constant; // G^p n^{p^2 - 2 beta p} det X
};

struct CornerScalingReport {
    Complex expected_slope; // -p^2 + 2 beta p
    Complex slope;
    LineFit real_fit, imag_fit;
    std::vector<CornerScalingRow> rows;
};

/// det X ~ G[tau]^{-p} n^{-p^2 + 2 beta p} c.
inline CornerScalingReport corner_scaling_check(const SymbolSpec& spec, std::span<const int> ns, int p)
{
    if (!(std::abs(spec.beta.real()) < 0.5)) throw std::domain_error("corner_scaling_check: requires |Re beta| < 1/2");
    if (p < 1 || p > 3) throw std::invalid_argument("corner_scaling_check: need 1 <= p <= 3");
    if (!detail::is_ascending_positive(ns) || ns.size() < 2) throw std::invalid_argument("corner_scaling_check: bad n list");
    CornerScalingReport rep;
    rep.expected_slope = -double(p * p) + 2.0 * spec.beta * double(p);
    const Complex lg = geometric_mean(spec.tau).log();
    std::vector<double> xs, yr, yi;
    double prev_phase = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const int n = ns[i];
        CornerScalingRow row;
        row.n = n;
        row.det_x = logdet_dense(inverse_corner(spec, n, p).entries);
        if (row.det_x.is_zero()) throw std::domain_error("corner_scaling_check: det X vanished");
        if (i > 0) row.det_x.arg = detail::unwrap_near(row.det_x.arg, prev_phase);
        prev_phase = row.det_x.arg;
        row.constant = row.det_x * LogComplex::from_log(double(p) * lg - rep.expected_slope * std::log(double(n)));
        xs.push_back(std::log(double(n)));
        yr.push_back(row.det_x.log_abs + double(p) * lg.real());
        yi.push_back(row.det_x.arg + double(p) * lg.imag());
        rep.rows.push_back(row);
    }
    rep.real_fit = linear_fit(xs, yr);
    rep.imag_fit = linear_fit(xs, yi);
    rep.slope = {rep.real_fit.slope, rep.imag_fit.slope};
    return rep;
}

} // namespace fhlab
