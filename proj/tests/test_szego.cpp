#include <gtest/gtest.h>

#include "fhlab/szego.hpp"

using namespace fhlab;

namespace {

// |1 - z|^{2a} = sum_n Gamma(1+2a) (-1)^n / (Gamma(1+a+n) Gamma(1+a-n)) z^n
double abs_power_coeff(double a, int n)
{
    return std::tgamma(1.0 + 2.0 * a) * (n % 2 ? -1.0 : 1.0) / (std::tgamma(1.0 + a + n) * std::tgamma(1.0 + a - n));
}

double u_hat_pure(double b, int n) { return abs_power_coeff(-b, n); }
double v_hat_pure(double b, int n) { return abs_power_coeff(b, n); }

} // namespace

TEST(Szego, ExpLaurentClosedForms)
{
    const TauSpec t = TauSpec::exp_of({{-2, 0.1}, {-1, -0.25}, {0, Complex(0.2, 0.3)}, {1, 0.4}, {2, Complex(0.0, 0.05)}});
    EXPECT_LT(std::abs(geometric_mean(t).log() - Complex(0.2, 0.3)), 1e-15);
    // E = exp(1 * 0.4 * (-0.25) + 2 * 0.05i * 0.1)
    EXPECT_LT(std::abs(szego_constant(t).log() - Complex(-0.1, 0.01)), 1e-15);
}

TEST(Szego, TridiagonalConstant)
{
    // log tau = -sum 0.5^k z^k / k - sum 0.3^k z^{-k} / k  =>  E = 1/0.85, G = 1
    const TauSpec t = TauSpec::polynomial({{-1, -0.3}, {0, 1.15}, {1, -0.5}});
    EXPECT_LT(std::abs(geometric_mean(t).log()), 1e-14);
    EXPECT_NEAR(szego_constant(t).value().real(), 1.0 / 0.85, 1e-13);
    const FourierSeries lt = log_tau_fourier(t, -6, 6);
    for (int k = 1; k <= 6; ++k) {
        EXPECT_NEAR(lt[k].real(), -std::pow(0.5, k) / k, 1e-14);
        EXPECT_NEAR(lt[-k].real(), -std::pow(0.3, k) / k, 1e-14);
    }
    // a constant factor only moves the mean
    const TauSpec t2 = TauSpec::polynomial({{-1, -0.6}, {0, 2.3}, {1, -1.0}});
    EXPECT_NEAR(geometric_mean(t2).value().real(), 2.0, 1e-13);
    EXPECT_NEAR(szego_constant(t2).value().real(), 1.0 / 0.85, 1e-13);
}

TEST(Szego, NegativeRealLaurentBranchTracking)
{
    // tau = -(1 - 0.5 z): winding zero, log tau carries i pi in the mean
    const TauSpec t = TauSpec::polynomial({{0, -1.0}, {1, 0.5}});
    const Complex lg = geometric_mean(t).log();
    EXPECT_NEAR(lg.real(), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(lg.imag()), pi, 1e-13);
    EXPECT_NEAR(std::abs(szego_constant(t).value() - 1.0), 0.0, 1e-13);
}

TEST(WienerHopf, FactorsReproduceTau)
{
    for (const TauSpec& t : {TauSpec::exp_of({{1, Complex(0.4, 0.1)}, {-1, -0.25}, {3, 0.05}}),
                             TauSpec::polynomial({{-1, -0.3}, {0, 1.15}, {1, -0.5}})}) {
        const Factorization fz = wiener_hopf(t);
        EXPECT_LT(fz.reconvolution_residual, 1e-13);
        EXPECT_LT(std::abs(fz.plus_at_one() * fz.minus_at_one() - t(1.0)), 1e-13);
        EXPECT_EQ(fz.tau_plus.min_index(), 0);
        EXPECT_LE(fz.tau_minus.max_index(), 0);
    }
    // exp(0.4 z - 0.25/z): tau_+ / tau_- at 1 = e^{0.65}
    const Factorization fz = wiener_hopf(TauSpec::exp_of({{1, 0.4}, {-1, -0.25}}));
    EXPECT_NEAR(std::log(std::abs(fz.plus_at_one() / fz.minus_at_one())), 0.65, 1e-14);
    EXPECT_LT(std::abs(log_jump_coupling(TauSpec::exp_of({{1, 0.4}, {-1, -0.25}}), Complex(0.3, 0.2)) - 0.65 * Complex(0.3, 0.2)),
              1e-14);
    EXPECT_EQ(log_jump_coupling(TauSpec::exp_of({{1, 0.4}, {-1, 0.4}}), 0.3), Complex(0.0));
}

TEST(UV, PureJumpClosedForms)
{
    for (double b : {0.2, -0.3, 0.45}) {
        const SymbolSpec s{b, TauSpec::one()};
        for (int n : {0, 1, 5, 40}) {
            const double u = u_hat_pure(b, n);
            EXPECT_LT(std::abs(u_fourier(s, n) - u), 1e-9 * std::max(1.0, std::abs(u))) << b << " " << n;
        }
        for (int m : {0, -1, -3, -12}) {
            const double v = v_hat_pure(b, m);
            EXPECT_LT(std::abs(v_fourier(s, m) - v), 1e-8) << b << " " << m;
        }
    }
}

TEST(UV, VAsymptoticConstantSign)
{
    // v-hat(n) for |1-z|^{2b}: -Gamma(1+2b) sin(pi b)/pi Gamma(n-b)/Gamma(n+1+b)
    const double b = 0.2;
    const Factorization fz = wiener_hopf(TauSpec::one());
    const CConstants c = c_constants(b, fz);
    EXPECT_NEAR(c.c0_prime.real(), -std::tgamma(1.0 + 2.0 * b) * std::sin(pi * b) / pi, 1e-14);
    EXPECT_NEAR(c.c0.real(), std::tgamma(1.0 - 2.0 * b) * std::sin(pi * b) / pi, 1e-14);
    const double v60 = v_fourier(SymbolSpec{b, TauSpec::one()}, -60).real();
    EXPECT_NEAR(v60 / (c.c0_prime.real() * std::pow(60.0, -1.0 - 2.0 * b)), 1.0, 0.01);
}

TEST(UV, LeadingCoefficientsWithSmoothTau)
{
    const int ns[] = {25, 50, 100, 200};
    const auto rows = check_u_asymptotics(SymbolSpec{Complex(0.2, 0.1), TauSpec::exp_of({{1, 0.4}, {-1, -0.2}})}, ns);
    double prev_u = 1e9, prev_v = 1e9;
    for (const auto& r : rows) {
        const double du = std::abs(r.u_ratio - 1.0), dv = std::abs(r.v_ratio - 1.0);
        EXPECT_LT(du, prev_u);
        EXPECT_LT(dv, prev_v);
        prev_u = du;
        prev_v = dv;
    }
    EXPECT_LT(prev_u, 0.02);
    EXPECT_LT(prev_v, 0.02);
    EXPECT_THROW(u_fourier(SymbolSpec{0.6, TauSpec::one()}, 3), std::domain_error);
}

TEST(VU, CornerEntryScalesAsOneOverN)
{
    // (VU)_{0,0} = sum_k u-hat(k+n) v-hat(-n-k) ~ c0 c0' sum_k (n+k)^{-2} ~ c0 c0' / n
    const SymbolSpec s{0.2, TauSpec::one()};
    const CConstants c = c_constants(0.2, wiener_hopf(s.tau));
    const Complex cc = c.c0 * c.c0_prime;
    const int n = 80;
    const VUEntry e = vu_entry(s, 0, 0, n, 60);
    const Complex full = e.value + e.tail_estimate;
    EXPECT_NEAR((full * double(n) / cc).real(), 1.0, 0.05);
    EXPECT_LT(std::abs(e.tail_estimate), e.tail_bound);
    // cross-check the truncated sum with the closed forms
    Complex direct = 0.0;
    for (int k = 1; k <= 60; ++k) direct += u_hat_pure(0.2, k + n) * v_hat_pure(0.2, -n - k);
    EXPECT_LT(std::abs(direct - e.value), 1e-8);
}

TEST(Kernel, ValueAtZeroAndReflection)
{
    for (Complex b : {Complex(0.2), Complex(0.0, 0.3), Complex(-0.15, 0.1)}) {
        const Complex cc = -std::exp(log_gamma(1.0 - 2.0 * b) + log_gamma(1.0 + 2.0 * b)) * std::pow(std::sin(pi * b) / pi, 2);
        EXPECT_LT(std::abs(kernel_function(b, 0.0) - cc), 1e-12);
        for (double x : {-3.0, 0.7, 5.0})
            EXPECT_LT(std::abs(kernel_function(b, x) - kernel_function(-b, -x)), 1e-12) << b << " " << x;
    }
}

TEST(Kernel, ClosedSymbolProperties)
{
    // small beta: k-hat(0) ~ -pi^2 beta^2;  k-hat(0) = -tan^2(pi beta) exactly
    EXPECT_NEAR(kernel_hat_closed(0.01, 0.0).real() / (-pi * pi * 1e-4), 1.0, 1e-3);
    EXPECT_NEAR(kernel_hat_closed(0.2, 0.0).real(), -std::pow(std::tan(pi * 0.2), 2), 1e-14);
    // even in xi, decays like e^{-2 pi |xi|}
    EXPECT_EQ(kernel_hat_closed(0.3, 1.5), kernel_hat_closed(0.3, -1.5));
    EXPECT_LT(std::abs(kernel_hat_closed(0.3, 4.0)), 1e-9);
}

TEST(Kernel, NumericTransformMatches)
{
    const double xi[] = {-2.0, -0.5, 0.0, 0.25, 1.0, 3.0};
    const KernelTransform kt = kernel_hat_numeric(Complex(0.1, 0.2), xi);
    for (std::size_t i = 0; i < std::size(xi); ++i)
        EXPECT_LT(std::abs(kt.value[i] - kernel_hat_closed(Complex(0.1, 0.2), xi[i])), 1e-6) << xi[i];
}
