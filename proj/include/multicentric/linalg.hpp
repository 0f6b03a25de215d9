#pragma once

#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include "core.hpp"
#include "polynomial.hpp"

namespace mcalc {

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
        : rows_(rows), cols_(cols), a_(std::move(data)) {
        if (a_.size() != rows_ * cols_)
            throw MalformedInput("matrix: entry count " + std::to_string(a_.size()) + " does not match " +
                                 std::to_string(rows_) + "x" + std::to_string(cols_));
        for (const cplx& x : a_)
            if (!is_finite(x)) throw MalformedInput("matrix: non-finite entry");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const cplx> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    std::span<const cplx> data() const { return a_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& x : a_) m = std::max(m, std::abs(x));
        return m;
    }

    /// Max absolute row sum (the norm induced by the max-norm on vectors).
    double norm_inf() const {
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
            m = std::max(m, s);
        }
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    std::vector<cplx> operator*(std::span<const cplx> x) const {
        if (x.size() != cols_) throw MalformedInput("matrix-vector: dimension mismatch");
        std::vector<cplx> y(rows_, cplx{0.0});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw MalformedInput("matrix product: dimension mismatch");
        ComplexMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{0.0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
        a.check_same(b);
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
        a.check_same(b);
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] -= b.a_[k];
        return a;
    }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
        for (cplx& x : a.a_) x *= s;
        return a;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void check_same(const ComplexMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw MalformedInput("matrix sum: dimension mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

namespace detail {

inline void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.square()) throw MalformedInput(std::string(what) + ": matrix must be square");
}

/// LU factorization with partial pivoting, in place. Returns the row
/// permutation.
inline std::vector<std::size_t> lu_factor(ComplexMatrix& lu, const ToleranceConfig& tol) {
    const std::size_t n = lu.rows();
    const double scale = lu.max_abs();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        if (std::abs(lu(piv, k)) <= tol.eq_tol * scale)
            throw SingularMatrix("pivot " + std::to_string(std::abs(lu(piv, k))) + " below threshold at column " +
                                 std::to_string(k));
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx m = lu(i, k) / lu(k, k);
            lu(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
        }
    }
    return perm;
}

inline std::vector<cplx> lu_solve(const ComplexMatrix& lu, std::span<const std::size_t> perm,
                                  std::span<const cplx> b) {
    const std::size_t n = lu.rows();
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = b[perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        cplx s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
        x[i] = s / lu(i, i);
    }
    return x;
}

}  // namespace detail

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<cplx> solve(const ComplexMatrix& a, std::span<const cplx> b, const ToleranceConfig& tol = {}) {
    detail::require_square(a, "solve");
    if (b.size() != a.rows()) throw MalformedInput("solve: right-hand side length mismatch");
    ComplexMatrix lu = a;
    const auto perm = detail::lu_factor(lu, tol);
    return detail::lu_solve(lu, perm, b);
}

inline ComplexMatrix inverse(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    detail::require_square(a, "inverse");
    const std::size_t n = a.rows();
    ComplexMatrix lu = a;
    const auto perm = detail::lu_factor(lu, tol);
    ComplexMatrix inv(n, n);
    std::vector<cplx> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), cplx{0.0});
        e[j] = 1.0;
        const auto col = detail::lu_solve(lu, perm, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

/// Basis of the null space of A by row reduction with partial pivoting.
/// Entries below tol * max|A| count as zero. Each basis vector has its first
/// largest-magnitude component equal to 1.
inline std::vector<std::vector<cplx>> null_space(const ComplexMatrix& a, double tol) {
    ComplexMatrix r = a;
    const std::size_t m = r.rows(), n = r.cols();
    const double thresh = tol * unit_scale(a.max_abs());
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < m; ++i)
            if (std::abs(r(i, col)) > std::abs(r(piv, col))) piv = i;
        if (std::abs(r(piv, col)) <= thresh) {
            for (std::size_t i = row; i < m; ++i) r(i, col) = 0.0;
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) std::swap(r(row, j), r(piv, j));
        const cplx inv = 1.0 / r(row, col);
        for (std::size_t j = 0; j < n; ++j) r(row, j) *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || r(i, col) == cplx{0.0}) continue;
            const cplx f = r(i, col);
            for (std::size_t j = 0; j < n; ++j) r(i, j) -= f * r(row, j);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    std::vector<std::vector<cplx>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
        std::vector<cplx> v(n, cplx{0.0});
        v[free] = 1.0;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -r(k, free);
        std::size_t big = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (std::abs(v[j]) > std::abs(v[big]) * (1.0 + 1e-12)) big = j;
        const cplx s = 1.0 / v[big];
        for (cplx& x : v) x *= s;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// q(A) by Horner's rule.
inline ComplexMatrix mat_poly_eval(const Polynomial& q, const ComplexMatrix& a) {
    detail::require_square(a, "mat_poly_eval");
    const std::size_t n = a.rows();
    ComplexMatrix acc(n, n);
    const auto c = q.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * a;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

/// Characteristic polynomial det(zI - A) by the Faddeev–LeVerrier recursion.
inline Polynomial characteristic_polynomial(const ComplexMatrix& a) {
    detail::require_square(a, "characteristic_polynomial");
    const std::size_t n = a.rows();
    std::vector<cplx> c(n + 1, cplx{0.0});
    c[n] = 1.0;
    ComplexMatrix m(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        c[n - k] = -(a * m).trace() / static_cast<double>(k);
    }
    return Polynomial(std::move(c));
}

/// Eigenvalues with multiplicity, from a complex Schur decomposition.
/// The dimension cap is kept as an input guard.
inline std::vector<cplx> eigenvalues(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    detail::require_square(a, "eigenvalues");
    const std::size_t n = a.rows();
    if (static_cast<int>(n) > tol.eigen_dim_cap)
        throw DimensionTooLarge("eigenvalues: dimension " + std::to_string(n) + " exceeds cap " +
                                std::to_string(tol.eigen_dim_cap));
    if (n == 0) return {};
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("eigenvalues: Schur iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

/// Induced 2-norm by power iteration on A^H A.
inline double operator_norm_2(const ComplexMatrix& a) {
    const std::size_t n = a.cols();
    if (n == 0 || a.max_abs() == 0.0) return 0.0;
    const ComplexMatrix g = a.adjoint() * a;
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cplx{1.0 + 0.37 * static_cast<double>(i), 0.21 * static_cast<double>(i % 3)};
    double est = 0.0;
    constexpr int max_iter = 200000;
    for (int it = 0; it < max_iter; ++it) {
        double nv = 0.0;
        for (const cplx& x : v) nv += std::norm(x);
        nv = std::sqrt(nv);
        for (cplx& x : v) x /= nv;
        auto gv = g * v;
        double rq = 0.0;
        for (std::size_t i = 0; i < n; ++i) rq += (std::conj(v[i]) * gv[i]).real();
        const double next = std::sqrt(std::max(rq, 0.0));
        if (it > 0 && std::abs(next - est) <= 1e-13 * next) return next;
        est = next;
        v = std::move(gv);
        bool zero = true;
        for (const cplx& x : v) zero = zero && x == cplx{0.0};
        if (zero) return est;
    }
    throw ConvergenceFailure("operator_norm_2: power iteration did not settle");
}

}  // namespace mcalc
