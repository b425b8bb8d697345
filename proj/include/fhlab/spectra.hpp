#pragma once

// Empirical eigenvalue measures of T_n against the pushforward of the
// normalized circle measure under sigma, and the geometry of the limiting
// set.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhlab/numerics.hpp"
#include "fhlab/symbols.hpp"
#include "fhlab/toeplitz.hpp"

namespace fhlab {

/// Test functionals: lambda^m (m <= 4), |lambda|^2, Re, Im and
/// |lambda - c|^2.
struct Functional {
    enum class Kind { power, abs_square, real_part, imag_part, shifted_abs_square };
    Kind kind = Kind::power;
    int power = 1;
    Complex center = 0.0;

    static Functional monomial(int m)
    {
        if (m < 1 || m > 4) throw std::invalid_argument("Functional: monomial degree must be 1..4");
        return {Kind::power, m, 0.0};
    }
    static Functional abs_square() { return {Kind::abs_square, 0, 0.0}; }
    static Functional real_part() { return {Kind::real_part, 0, 0.0}; }
    static Functional imag_part() { return {Kind::imag_part, 0, 0.0}; }
    static Functional distance_square(Complex c) { return {Kind::shifted_abs_square, 0, c}; }

    Complex operator()(Complex l) const
    {
        switch (kind) {
        case Kind::power: return std::pow(l, power);
        case Kind::abs_square: return std::norm(l);
        case Kind::real_part: return l.real();
        case Kind::imag_part: return l.imag();
        case Kind::shifted_abs_square: return std::norm(l - center);
        }
        return 0.0;
    }

    std::string id() const
    {
        switch (kind) {
        case Kind::power: return "pow" + std::to_string(power);
        case Kind::abs_square: return "abs2";
        case Kind::real_part: return "re";
        case Kind::imag_part: return "im";
        case Kind::shifted_abs_square: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "dist2:%.17g,%.17g", center.real(), center.imag());
            return buf;
        }
        }
        return "?";
    }

    /// Inverse of id(): pow1..pow4, abs2, re, im, dist2:<re>,<im>.
    static Functional parse(const std::string& s)
    {
        if (s.size() == 4 && s.rfind("pow", 0) == 0 && s[3] >= '1' && s[3] <= '4') return monomial(s[3] - '0');
        if (s == "abs2") return abs_square();
        if (s == "re") return real_part();
        if (s == "im") return imag_part();
        if (s.rfind("dist2:", 0) == 0) {
            const std::string rest = s.substr(6);
            const auto comma = rest.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("Functional: dist2 needs re,im");
            return distance_square({std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1))});
        }
        throw std::invalid_argument("Functional: unknown id '" + s + "'");
    }
};

/// (1/2pi) int_0^{2pi} F(sigma(e^{i theta})) d theta. The jump sits at the
/// interval ends, which the Gauss-Kronrod nodes never touch.
inline Complex symbol_side(const SymbolSpec& spec, const Functional& f)
{
    auto g = [&](double t) -> Complex {
        const Complex s = spec.beta == Complex(0.0) ? spec.tau.on_circle(t) : eval_symbol(spec, t);
        return f(s);
    };
    QuadOptions opt;
    opt.abs_tol = 1e-11;
    return adaptive_quad(g, 0.0, two_pi, opt).value / two_pi;
}

struct FunctionalRow {
    std::string id;
    Complex empirical;
    Complex symbol_side;
    double deviation = 0.0;
    std::optional<double> trace_residual; // for lambda^m: |(n+1) empirical - tr T^m| / (1 + |tr T^m|)
};

struct EmpiricalMeasure {
    int n = 0;
    std::vector<Complex> eigenvalues;
    double mass = 0.0;
    bool converged = true;
    std::vector<FunctionalRow> rows;
};

inline EmpiricalMeasure canonical_check(const SymbolSpec& spec, const ToeplitzMatrix& t, const SpectrumReport& spectrum,
                                        std::span<const Functional> functionals)
{
    EmpiricalMeasure em;
    em.n = t.n;
    em.eigenvalues = spectrum.eigenvalues;
    em.converged = spectrum.converged;
    const double w = 1.0 / double(t.dim());
    em.mass = double(em.eigenvalues.size()) / double(t.dim());
    for (const auto& f : functionals) {
        FunctionalRow row;
        row.id = f.id();
        Complex s = 0.0;
        for (auto l : em.eigenvalues) s += f(l);
        row.empirical = s * w;
        row.symbol_side = symbol_side(spec, f);
        row.deviation = std::abs(row.empirical - row.symbol_side);
        if (f.kind == Functional::Kind::power) {
            const Complex tr = trace_power(t, f.power) * double(t.dim());
            row.trace_residual = std::abs(s - tr) / (1.0 + std::abs(tr));
        }
        em.rows.push_back(row);
    }
    return em;
}

inline EmpiricalMeasure canonical_check(const SymbolSpec& spec, int n, std::span<const Functional> functionals)
{
    const ToeplitzMatrix t = build(spec, n);
    return canonical_check(spec, t, eigenvalues(t), functionals);
}

// ---------------------------------------------------------------------------
// Limiting set

namespace detail {

inline double segment_distance(Complex p, Complex a, Complex b)
{
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

inline double polyline_distance(Complex p, std::span<const Complex> pts)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) best = std::min(best, segment_distance(p, pts[i], pts[i + 1]));
    if (pts.size() == 1) best = std::abs(p - pts[0]);
    return best;
}

struct SetDistances {
    double eig_to_range = 0.0;
    double range_to_eig = 0.0;
};

inline SetDistances set_distances(const SymbolSpec& spec, std::span<const Complex> eigs, int resolution, bool include_chord)
{
    const RangeCurve rc = range_curve(spec, resolution);
    std::span<const Complex> target(rc.points.data(), include_chord ? rc.points.size() : rc.arc_count);
    SetDistances d;
    for (auto l : eigs) d.eig_to_range = std::max(d.eig_to_range, polyline_distance(l, target));
    for (std::size_t i = 0; i < rc.arc_count; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (auto l : eigs) best = std::min(best, std::abs(rc.points[i] - l));
        d.range_to_eig = std::max(d.range_to_eig, best);
    }
    return d;
}

} // namespace detail

struct LimitingSetReport {
    int n = 0;
    double max_eig_to_range = 0.0;
    double max_range_to_eig = 0.0;
    int resolution = 0;
};

/// Distances between the spectrum and the closure of the range; the
/// resolution is doubled until both distances move by less than 1e-3.
inline LimitingSetReport limiting_set_distances(const SymbolSpec& spec, int n, std::span<const Complex> eigs,
                                                int resolution = 256, bool include_chord = false)
{
    LimitingSetReport rep;
    rep.n = n;
    detail::SetDistances prev = detail::set_distances(spec, eigs, resolution, include_chord);
    for (;;) {
        const int next_res = resolution * 2;
        detail::SetDistances next = detail::set_distances(spec, eigs, next_res, include_chord);
        const bool stable = std::abs(next.eig_to_range - prev.eig_to_range) < 1e-3 &&
                            std::abs(next.range_to_eig - prev.range_to_eig) < 1e-3;
        prev = next;
        resolution = next_res;
        if (stable || resolution >= (1 << 16)) break;
    }
    rep.max_eig_to_range = prev.eig_to_range;
    rep.max_range_to_eig = prev.range_to_eig;
    rep.resolution = resolution;
    return rep;
}

inline std::vector<LimitingSetReport> limiting_set_check(const SymbolSpec& spec, std::span<const int> ns,
                                                         int resolution = 256, bool include_chord = false)
{
    std::vector<LimitingSetReport> out;
    for (int n : ns) {
        if (n + 1 > max_eigen_dim) throw std::invalid_argument("limiting_set_check: n + 1 exceeds 1024");
        const SpectrumReport sr = eigenvalues(build(spec, n));
        out.push_back(limiting_set_distances(spec, n, sr.eigenvalues, resolution, include_chord));
    }
    return out;
}

inline int eig_count_near(std::span<const Complex> eigs, Complex center, double epsilon)
{
    if (!(epsilon > 0.0)) throw std::invalid_argument("eig_count_near: epsilon must be positive");
    return int(std::count_if(eigs.begin(), eigs.end(), [&](Complex l) { return std::abs(l - center) < epsilon; }));
}

inline int eig_count_near(const SymbolSpec& spec, int n, Complex center, double epsilon)
{
    return eig_count_near(eigenvalues(build(spec, n)).eigenvalues, center, epsilon);
}

} // namespace fhlab
