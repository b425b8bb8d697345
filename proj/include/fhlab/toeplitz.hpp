#pragma once

// Finite Toeplitz sections T_n = (sigma-hat(i - j)), 0 <= i, j <= n:
// dense and Levinson-type log-determinants, inverse corner blocks, power
// traces and eigenvalues.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fhlab/numerics.hpp"
#include "fhlab/symbols.hpp"

namespace fhlab {

using DenseMatrix = Eigen::MatrixXcd;

/// (n+1) x (n+1) Toeplitz matrix held by its generators.
struct ToeplitzMatrix {
    int n = 0;
    std::vector<Complex> column; // sigma-hat(0), ..., sigma-hat(n)
    std::vector<Complex> row;    // sigma-hat(0), sigma-hat(-1), ..., sigma-hat(-n)

    int dim() const { return n + 1; }

    Complex symbol_coeff(int k) const { return k >= 0 ? column[std::size_t(k)] : row[std::size_t(-k)]; }

    Complex operator()(int i, int j) const { return symbol_coeff(i - j); }

    DenseMatrix dense() const
    {
        DenseMatrix m(dim(), dim());
        for (int j = 0; j < dim(); ++j)
            for (int i = 0; i < dim(); ++i) m(i, j) = symbol_coeff(i - j);
        return m;
    }

    static ToeplitzMatrix from_series(const FourierSeries& s, int n)
    {
        if (s.min_index() > -n || s.max_index() < n) throw std::invalid_argument("ToeplitzMatrix: series too short");
        ToeplitzMatrix t;
        t.n = n;
        for (int k = 0; k <= n; ++k) {
            t.column.push_back(s[k]);
            t.row.push_back(s[-k]);
        }
        return t;
    }

    ToeplitzMatrix transposed() const
    {
        ToeplitzMatrix t = *this;
        std::swap(t.column, t.row);
        return t;
    }
};

inline ToeplitzMatrix build(const SymbolSpec& spec, int n)
{
    if (n < 0) throw std::invalid_argument("build: n must be non-negative");
    return ToeplitzMatrix::from_series(sigma_fourier(spec, -n, n), n);
}

// ---------------------------------------------------------------------------
// Dense reference

namespace detail {

inline LogDet logdet_from_lu(const Eigen::PartialPivLU<DenseMatrix>& lu)
{
    LogDet d;
    const auto& m = lu.matrixLU();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Complex p = m(i, i);
        if (std::abs(p) < 1e-300) return LogDet::zero();
        d *= LogComplex::from(p);
    }
    if (lu.permutationP().determinant() < 0) d.arg += pi;
    d.arg = principal_arg(d.arg);
    return d;
}

} // namespace detail

/// log det of a dense matrix by LU with partial pivoting (phase reduced to
/// (-pi, pi]).
inline LogDet logdet_dense(const DenseMatrix& m)
{
    if (m.rows() == 0) return {};
    Eigen::PartialPivLU<DenseMatrix> lu(m);
    return detail::logdet_from_lu(lu);
}

inline LogDet logdet_lu(const ToeplitzMatrix& m) { return logdet_dense(m.dense()); }

// ---------------------------------------------------------------------------
// Levinson-type recursion

struct LevinsonResult {
    std::vector<LogDet> logdets;     // sizes 0 .. logdets.size() - 1
    std::optional<int> breakdown_at; // first size whose minor ratio collapsed
};

/// log D_k for k = 0..n in O(n^2) from the ratios D_k / D_{k-1}. Phases
/// are sums of principal arguments of the ratios, so they vary
/// continuously with k.
inline LevinsonResult logdet_levinson(const ToeplitzMatrix& t)
{
    LevinsonResult res;
    const int n = t.n;
    Complex eps = t.symbol_coeff(0);
    double scale = std::abs(eps);
    if (std::abs(eps) < 1e-300) {
        res.breakdown_at = 0;
        return res;
    }
    LogDet acc = LogComplex::from(eps);
    res.logdets.push_back(acc);

    // T_k a = eps e_0 with a_0 = 1;  T_k b = eps e_k with b_k = 1
    std::vector<Complex> a{1.0}, b{1.0};
    a.reserve(std::size_t(n + 1));
    b.reserve(std::size_t(n + 1));
    std::vector<Complex> a_next, b_next;
    for (int k = 0; k < n; ++k) {
        Complex alpha = 0.0, gamma = 0.0;
        for (int j = 0; j <= k; ++j) {
            alpha += t.symbol_coeff(k + 1 - j) * a[std::size_t(j)];
            gamma += t.symbol_coeff(-j - 1) * b[std::size_t(j)];
        }
        const Complex ra = alpha / eps;
        const Complex rg = gamma / eps;
        a_next.assign(std::size_t(k + 2), 0.0);
        b_next.assign(std::size_t(k + 2), 0.0);
        for (int j = 0; j <= k; ++j) {
            a_next[std::size_t(j)] += a[std::size_t(j)];
            a_next[std::size_t(j + 1)] -= ra * b[std::size_t(j)];
            b_next[std::size_t(j + 1)] += b[std::size_t(j)];
            b_next[std::size_t(j)] -= rg * a[std::size_t(j)];
        }
        const Complex eps_next = eps - alpha * rg;
        if (std::abs(eps_next) < 1e-12 * scale) {
            res.breakdown_at = k + 1;
            return res;
        }
        scale = std::max(scale, std::abs(eps_next));
        eps = eps_next;
        a.swap(a_next);
        b.swap(b_next);
        acc *= LogComplex::from(eps);
        res.logdets.push_back(acc);
    }
    return res;
}

inline LevinsonResult logdet_levinson(const SymbolSpec& spec, int n) { return logdet_levinson(build(spec, n)); }

// ---------------------------------------------------------------------------
// Inverse corner

/// x_{i,j} = (T_n^{-1})_{n-p+i+1, j}, 0 <= i, j < p.
struct CornerBlock {
    int p = 0;
    DenseMatrix entries;
};

class singular_matrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline CornerBlock inverse_corner(const ToeplitzMatrix& t, int p)
{
    if (p < 1 || p > t.n) throw std::invalid_argument("inverse_corner: need 1 <= p <= n");
    const DenseMatrix m = t.dense();
    Eigen::PartialPivLU<DenseMatrix> lu(m);
    if (detail::logdet_from_lu(lu).is_zero()) throw singular_matrix("inverse_corner: T_n is singular");
    DenseMatrix rhs = DenseMatrix::Zero(t.dim(), p);
    for (int j = 0; j < p; ++j) rhs(j, j) = 1.0;
    const DenseMatrix cols = lu.solve(rhs);
    CornerBlock cb;
    cb.p = p;
    cb.entries = cols.bottomRows(p);
    return cb;
}

inline CornerBlock inverse_corner(const SymbolSpec& spec, int n, int p) { return inverse_corner(build(spec, n), p); }

// ---------------------------------------------------------------------------
// Power traces

/// Toeplitz matvec through a circulant embedding of length 2^k >= 2(n+1).
class ToeplitzMultiplier {
public:
    explicit ToeplitzMultiplier(const ToeplitzMatrix& t) : dim_(t.dim())
    {
        size_ = next_power_of_two(std::size_t(2 * dim_));
        std::vector<Complex> c(size_, 0.0);
        for (int k = 0; k < dim_; ++k) c[std::size_t(k)] = t.symbol_coeff(k);
        for (int k = 1; k < dim_; ++k) c[size_ - std::size_t(k)] = t.symbol_coeff(-k);
        symbol_ = fft(c);
    }

    std::vector<Complex> apply(std::span<const Complex> x) const
    {
        std::vector<Complex> buf(size_, 0.0);
        std::copy(x.begin(), x.end(), buf.begin());
        std::vector<Complex> y = fft(buf);
        for (std::size_t j = 0; j < size_; ++j) y[j] *= symbol_[j];
        y = inverse_fft(y);
        y.resize(std::size_t(dim_));
        return y;
    }

private:
    int dim_;
    std::size_t size_;
    std::vector<Complex> symbol_;
};

/// tr(T_n^m) / (n + 1).
inline Complex trace_power(const ToeplitzMatrix& t, int m)
{
    if (m < 1) throw std::invalid_argument("trace_power: m must be >= 1");
    if (m == 1) return t.symbol_coeff(0);
    ToeplitzMultiplier mul(t);
    Complex tr = 0.0;
    std::vector<Complex> x(std::size_t(t.dim()));
    for (int j = 0; j < t.dim(); ++j) {
        std::fill(x.begin(), x.end(), 0.0);
        x[std::size_t(j)] = 1.0;
        for (int r = 0; r < m; ++r) x = mul.apply(x);
        tr += x[std::size_t(j)];
    }
    return tr / double(t.dim());
}

inline Complex trace_power(const SymbolSpec& spec, int n, int m) { return trace_power(build(spec, n), m); }

// ---------------------------------------------------------------------------
// Eigenvalues

struct SpectrumReport {
    std::vector<Complex> eigenvalues;
    bool converged = true;
    double trace_residual = 0.0;       // |sum lambda - tr| / (1 + |tr|)
    std::optional<double> det_residual; // |log prod lambda - log det| / (1 + |log det|), when well-defined
};

inline constexpr int max_eigen_dim = 1024;

/// Eigenvalues by Hessenberg reduction and shifted complex QR.
inline SpectrumReport eigenvalues(const ToeplitzMatrix& t)
{
    if (t.dim() > max_eigen_dim) throw std::invalid_argument("eigenvalues: n + 1 exceeds 1024");
    const DenseMatrix m = t.dense();
    Eigen::ComplexEigenSolver<DenseMatrix> solver(m, false);
    SpectrumReport r;
    r.converged = solver.info() == Eigen::Success;
    const auto& ev = solver.eigenvalues();
    r.eigenvalues.assign(ev.data(), ev.data() + ev.size());

    Complex sum = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    LogComplex prod;
    for (auto l : r.eigenvalues) {
        sum += l;
        min_abs = std::min(min_abs, std::abs(l));
        prod *= LogComplex::from(l);
    }
    const Complex tr = double(t.dim()) * t.symbol_coeff(0);
    r.trace_residual = std::abs(sum - tr) / (1.0 + std::abs(tr));
    if (min_abs > 1e-12) {
        const LogDet d = logdet_lu(t);
        r.det_residual = std::abs(prod.log_abs - d.log_abs) / (1.0 + std::abs(d.log_abs));
    }
    return r;
}

} // namespace fhlab
