#include <gtest/gtest.h>

#include <random>

#include "fhlab/symbols.hpp"

using namespace fhlab;

namespace {

// (1/2pi) int_0^{2pi} sigma(e^{i theta}) e^{-ik theta} d theta, straight from
// the pointwise symbol
Complex coefficient_by_quadrature(const SymbolSpec& s, int k)
{
    QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-13;
    auto f = [&](double t) { return eval_symbol(s, t) * std::polar(1.0, -k * t); };
    return adaptive_quad(f, 0.0, two_pi, opt).value / two_pi;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

} // namespace

TEST(JumpFourier, ClosedFormIdentity)
{
    for (Complex b : {Complex(0.3), Complex(-0.4), Complex(1.3, 0.2), Complex(0.0, 0.45)})
        for (int k = -20; k <= 20; ++k) {
            const Complex r = jump_fourier(b, k) * pi * (b - double(k)) / std::sin(pi * b);
            EXPECT_LT(std::abs(r - 1.0), 1e-13) << b << " " << k;
        }
    EXPECT_THROW(jump_fourier(2.0, 1), std::invalid_argument);
}

TEST(JumpFourier, AgreesWithQuadrature)
{
    for (Complex b : {Complex(0.3), Complex(2.6), Complex(0.3, 0.25)})
        for (int k : {-5, 0, 1, 7}) {
            const SymbolSpec s{b, TauSpec::one()};
            EXPECT_LT(std::abs(jump_fourier(b, k) - coefficient_by_quadrature(s, k)), 1e-10) << b << " " << k;
        }
}

TEST(TauFourier, ExponentialSeries)
{
    // exp(a z) has coefficients a^k / k!
    const Complex a(0.4, -0.2);
    const FourierSeries f = tau_fourier(TauSpec::exp_of({{1, a}}), -3, 12);
    for (int k = -3; k <= 12; ++k) {
        const Complex want = k < 0 ? Complex(0.0) : std::pow(a, k) / factorial(k);
        EXPECT_LT(std::abs(f[k] - want), 1e-16 + 1e-14 * std::abs(want)) << k;
    }
    // exp(a z + b / z) at k = 0 is sum_m (ab)^m / (m!)^2 = I_0(2 sqrt(ab)) for real positive ab
    const FourierSeries g = tau_fourier(TauSpec::exp_of({{1, 0.4}, {-1, 0.25}}), 0, 0);
    EXPECT_NEAR(g[0].real(), std::cyl_bessel_i(0.0, 2.0 * std::sqrt(0.1)), 1e-15);
}

TEST(TauFourier, LaurentIsExact)
{
    const TauSpec t = TauSpec::polynomial({{-2, Complex(0.1, 0.2)}, {0, 3.0}, {3, -1.0}});
    const FourierSeries f = tau_fourier(t, -4, 4);
    EXPECT_EQ(f[-2], Complex(0.1, 0.2));
    EXPECT_EQ(f[0], Complex(3.0));
    EXPECT_EQ(f[3], Complex(-1.0));
    EXPECT_EQ(f[1], Complex(0.0));
    EXPECT_EQ(f[-4], Complex(0.0));
}

TEST(SigmaFourier, RandomSpecsAgainstQuadrature)
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        SymbolSpec s;
        s.beta = {1.4 * u(rng), 0.4 * u(rng)};
        if (std::abs(s.beta.real() - std::round(s.beta.real())) < 0.05) s.beta += 0.1;
        s.tau = TauSpec::exp_of({{-1, {0.3 * u(rng), 0.3 * u(rng)}}, {1, {0.4 * u(rng), 0.2 * u(rng)}}, {2, 0.1 * u(rng)}});
        const int k = int(std::lround(8 * u(rng)));
        const FourierSeries f = sigma_fourier(s, k, k);
        worst = std::max(worst, std::abs(f[k] - coefficient_by_quadrature(s, k)));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(SigmaFourier, IntegerBetaIsShiftedTau)
{
    // (-z)^2 tau = z^2 tau; (-z) tau = -z tau
    const TauSpec t = TauSpec::exp_of({{1, 0.3}});
    const FourierSeries ft = tau_fourier(t, -6, 6);
    const FourierSeries f2 = sigma_fourier({2.0, t}, -4, 4);
    const FourierSeries f1 = sigma_fourier({1.0, t}, -4, 4);
    for (int k = -4; k <= 4; ++k) {
        EXPECT_LT(std::abs(f2[k] - ft[k - 2]), 1e-15);
        EXPECT_LT(std::abs(f1[k] + ft[k - 1]), 1e-15);
    }
}

TEST(SigmaFourier, ConjugationAndTranspose)
{
    const SymbolSpec s{Complex(0.35, 0.2), TauSpec::exp_of({{1, Complex(0.4, 0.1)}, {-1, Complex(-0.25, 0.05)}})};
    const SymbolSpec c{std::conj(s.beta), s.tau.conjugated()};
    const FourierSeries a = sigma_fourier(s, -10, 10);
    const FourierSeries b = sigma_fourier(c, -10, 10);
    const FourierSeries r = sigma_fourier(s.reflected(), -10, 10);
    for (int k = -10; k <= 10; ++k) {
        EXPECT_LT(std::abs(b[k] - std::conj(a[k])), 1e-14) << k;
        EXPECT_LT(std::abs(r[k] - a[-k]), 1e-14) << k;
    }
}

TEST(SigmaFourier, JumpDominatedDecay)
{
    const SymbolSpec s{0.3, TauSpec::exp_of({{1, 0.4}, {-1, -0.25}})};
    const FourierSeries f = sigma_fourier(s, -400, 400);
    double lo = 1e300, hi = 0.0;
    for (int k : {-400, -200, -100, 100, 200, 400}) {
        const double m = std::abs(f[k]) * std::abs(k);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi / lo, 3.0);
}

TEST(EvalSymbol, ValuesAndLimits)
{
    const SymbolSpec s{Complex(0.3, 0.1), TauSpec::exp_of({{1, 0.4}})};
    // theta = pi: -z = 1
    EXPECT_LT(std::abs(eval_symbol(s, pi) - std::exp(-0.4)), 1e-15);
    const Complex t1 = std::exp(0.4);
    EXPECT_LT(std::abs(eval_symbol_limit(s, Side::right_of_zero) - std::exp(Complex(0, -pi) * s.beta) * t1), 1e-14);
    EXPECT_LT(std::abs(eval_symbol_limit(s, Side::left_of_two_pi) - std::exp(Complex(0, pi) * s.beta) * t1), 1e-14);
    EXPECT_LT(std::abs(eval_symbol(s, 1e-9) - eval_symbol_limit(s, Side::right_of_zero)), 1e-8);
    EXPECT_THROW(eval_symbol(s, 0.0), std::domain_error);
    EXPECT_THROW(eval_symbol(s, two_pi), std::domain_error);
}

TEST(Winding, Circles)
{
    std::vector<Complex> c;
    for (int j = 0; j <= 64; ++j) c.push_back(std::polar(2.0, 2.0 * two_pi * j / 64.0));
    EXPECT_EQ(winding_number(c).winding, 2);
    std::vector<Complex> d;
    for (int j = 0; j <= 64; ++j) d.push_back(Complex(3.0, 0.0) + std::polar(1.0, -two_pi * j / 64.0));
    EXPECT_EQ(winding_number(d).winding, 0);
    std::vector<Complex> e;
    for (int j = 0; j <= 64; ++j) e.push_back(std::polar(1.0, -two_pi * j / 64.0));
    EXPECT_EQ(winding_number(e).winding, -1);
    std::vector<Complex> through{1.0, 0.0, Complex(0.0, 1.0), 1.0};
    EXPECT_THROW(winding_number(through), winding_undefined);
}

TEST(Winding, RangeCurveNearestInteger)
{
    // the arc sweeps 2 pi Re(beta); the chord closes it through the short side
    const std::pair<double, int> cases[] = {{0.3, 0}, {-0.4, 0}, {1.3, 1}, {2.6, 3}, {-1.7, -2}};
    for (auto [b, w] : cases) {
        const RangeCurve rc = range_curve({b, TauSpec::one()}, 2048);
        EXPECT_EQ(winding_number(rc.points).winding, w) << b;
    }
}

TEST(VerifyClass, Membership)
{
    EXPECT_TRUE(verify_class({0.3, TauSpec::exp_of({{1, 0.4}, {-1, -0.25}})}).passed());
    EXPECT_TRUE(verify_class({0.3, TauSpec::polynomial({{-1, -0.3}, {0, 1.15}, {1, -0.5}})}).passed());
    const ClassReport wound = verify_class({0.3, TauSpec::polynomial({{0, 1.0}, {1, 2.0}})});
    EXPECT_FALSE(wound.passed());
    EXPECT_EQ(wound.tau_winding, 1);
    const ClassReport zero = verify_class({0.3, TauSpec::polynomial({{0, 1.0}, {1, 1.0}})});
    EXPECT_FALSE(zero.nonvanishing);
}
