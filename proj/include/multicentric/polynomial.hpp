#pragma once

#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "core.hpp"
#include "pointset.hpp"

namespace mcalc {

/// Dense polynomial with complex coefficients in ascending powers.
///
/// Trailing zero coefficients are stripped, so `coeffs().back()` is the
/// leading coefficient. The zero polynomial has no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
        for (const cplx& a : c_)
            if (!is_finite(a)) throw MalformedInput("polynomial coefficient is not finite");
        trim();
    }

    Polynomial(std::initializer_list<cplx> coeffs) : Polynomial(std::vector<cplx>(coeffs)) {}

    static Polynomial constant(cplx a) { return Polynomial({a}); }

    static Polynomial monomial(int power, cplx a = 1.0) {
        std::vector<cplx> c(static_cast<std::size_t>(power) + 1, cplx{0.0});
        c.back() = a;
        return Polynomial(std::move(c));
    }

    /// Monic polynomial with the given roots.
    static Polynomial from_roots(std::span<const cplx> roots) {
        std::vector<cplx> c{1.0};
        for (const cplx& r : roots) {
            c.push_back(0.0);
            for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
            c[0] = -r * c[0];
        }
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::span<const cplx> coeffs() const { return c_; }
    cplx coeff(int k) const {
        return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : cplx{0.0};
    }
    cplx leading() const { return c_.empty() ? cplx{0.0} : c_.back(); }

    cplx operator()(cplx z) const {
        cplx acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// Value and first derivative by a single Horner sweep.
    std::pair<cplx, cplx> eval_with_derivative(cplx z) const {
        cplx p = 0.0, dp = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            dp = dp * z + p;
            p = p * z + *it;
        }
        return {p, dp};
    }

    /// sum_k |c_k| |z|^k, the natural magnitude for residuals at z.
    double eval_scale(cplx z) const {
        const double r = std::abs(z);
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
        return acc;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const cplx& a : c_) m = std::max(m, std::abs(a));
        return m;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<cplx> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        return Polynomial(std::move(d));
    }

    Polynomial derivative(int order) const {
        Polynomial q = *this;
        for (int i = 0; i < order; ++i) q = q.derivative();
        return q;
    }

    /// Scaled so that the leading coefficient is 1.
    Polynomial monic() const {
        if (is_zero()) throw MalformedInput("zero polynomial has no monic rescaling");
        return *this * (1.0 / leading());
    }

    bool is_monic(double tol) const { return !is_zero() && std::abs(leading() - 1.0) <= tol; }

    /// this(inner(z)) by Horner in the polynomial ring.
    Polynomial compose(const Polynomial& inner) const {
        Polynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
        return acc;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), cplx{0.0});
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a) { return a * cplx{-1.0}; }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, cplx{0.0});
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, cplx s) {
        std::vector<cplx> c = a.c_;
        for (cplx& x : c) x *= s;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(cplx s, const Polynomial& a) { return a * s; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx{0.0}) c_.pop_back();
    }

    std::vector<cplx> c_;
};

/// Integral of q from 0 plus the constant c: derivative of the result is q.
inline Polynomial antiderivative(const Polynomial& q, cplx c) {
    std::vector<cplx> a(q.coeffs().size() + 1, cplx{0.0});
    a[0] = c;
    for (std::size_t k = 0; k < q.coeffs().size(); ++k) a[k + 1] = q.coeffs()[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a));
}

/// Root residual scale at z: max(1, sum |a_k||z|^k) for the monic rescaling.
inline double root_residual_scale(const Polynomial& monic_q, cplx z) {
    return std::max(1.0, monic_q.eval_scale(z));
}

/// All roots of q (with multiplicity) by Aberth–Ehrlich simultaneous
/// iteration.
///
/// Starts from a circle of radius 1 + max|a_k|/|a_n| rotated by 0.4 rad.
/// Clustered roots are returned as computed; no deflation is done.
inline std::vector<cplx> roots(const Polynomial& q, const ToleranceConfig& tol = {}) {
    const int n = q.degree();
    if (n < 1) throw MalformedInput("roots: polynomial degree must be at least 1");
    const Polynomial a = q.monic();
    const auto& c = a.coeffs();

    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(k)]));
    const double radius = 1.0 + bound;

    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);
    if (n == 1) return {-c[0]};

    std::vector<bool> done(z.size(), false);
    constexpr int max_iter = 2000;
    for (int iter = 0; iter < max_iter; ++iter) {
        bool all_done = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (done[k]) continue;
            const auto [pz, dpz] = a.eval_with_derivative(z[k]);
            if (std::abs(pz) <= 4.0 * machine_eps * a.eval_scale(z[k])) {
                done[k] = true;
                continue;
            }
            all_done = false;
            cplx repulse = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k && z[j] != z[k]) repulse += 1.0 / (z[k] - z[j]);
            const cplx ratio = pz / dpz;
            cplx corr = ratio / (1.0 - ratio * repulse);
            // Stationary point of q or a collision: nudge off it.
            if (!is_finite(corr)) corr = 1e-8 * (std::abs(z[k]) + 1.0);
            z[k] -= corr;
            if (std::abs(corr) <= 2.0 * machine_eps * std::abs(z[k])) done[k] = true;
        }
        if (all_done) break;
    }

    double worst = 0.0;
    for (const cplx& r : z) worst = std::max(worst, std::abs(a(r)) / root_residual_scale(a, r));
    if (!(worst <= tol.root_tol))
        throw ConvergenceFailure("Aberth iteration did not reach the residual bound; best relative residual " +
                                 std::to_string(worst));
    return z;
}

/// Distinct interpolation centers: the zeros of p(z) = prod (z - lambda_j).
class Centers {
public:
    explicit Centers(std::vector<cplx> lambdas, const ToleranceConfig& tol = {}) : lambdas_(std::move(lambdas)) {
        if (lambdas_.empty()) throw MalformedInput("centers: at least one center required");
        for (const cplx& l : lambdas_)
            if (!is_finite(l)) throw MalformedInput("centers: non-finite center");
        separation_ = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lambdas_.size(); ++i)
            for (std::size_t j = i + 1; j < lambdas_.size(); ++j)
                separation_ = std::min(separation_, std::abs(lambdas_[i] - lambdas_[j]));
        if (!(separation_ > tol.crit_tol))
            throw CentersDegenerate("centers are not pairwise distinct (separation " + std::to_string(separation_) +
                                    ")");
    }

    std::span<const cplx> lambdas() const { return lambdas_; }
    int d() const { return static_cast<int>(lambdas_.size()); }
    double separation() const { return separation_; }
    Polynomial polynomial() const { return Polynomial::from_roots(lambdas_); }

    friend bool operator==(const Centers& a, const Centers& b) { return a.lambdas_ == b.lambdas_; }

private:
    std::vector<cplx> lambdas_;
    double separation_ = 0.0;
};

/// Lagrange basis polynomial delta_j(z) = prod_{k != j} (z - lambda_k) / (lambda_j - lambda_k).
inline Polynomial lagrange_basis_poly(std::span<const cplx> nodes, std::size_t j) {
    Polynomial acc = Polynomial::constant(1.0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k == j) continue;
        acc = acc * Polynomial({-nodes[k] / (nodes[j] - nodes[k]), 1.0 / (nodes[j] - nodes[k])});
    }
    return acc;
}

inline std::vector<Polynomial> lagrange_basis(const Centers& c) {
    std::vector<Polynomial> out;
    for (std::size_t j = 0; j < c.lambdas().size(); ++j) out.push_back(lagrange_basis_poly(c.lambdas(), j));
    return out;
}

/// Evaluates the j-th Lagrange basis function of `nodes` at z in product
/// form. Exact (0 or 1) when z coincides with a node.
inline cplx lagrange_basis_value(std::span<const cplx> nodes, std::size_t j, cplx z) {
    if (z == nodes[j]) return 1.0;
    cplx num = 1.0, den = 1.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k == j) continue;
        if (z == nodes[k]) return 0.0;
        num *= z - nodes[k];
        den *= nodes[j] - nodes[k];
    }
    return num / den;
}

/// Divided differences y[x_0], y[x_0,x_1], ... of the Newton form.
/// Nodes must be distinct.
inline std::vector<cplx> newton_coefficients(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size() || x.empty()) throw MalformedInput("interpolate: node/value size mismatch");
    std::vector<cplx> dd(y.begin(), y.end());
    const std::size_t n = x.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - level]);
    return dd;
}

/// Interpolating polynomial through (x_i, y_i), expanded to monomial form.
inline Polynomial interpolate(std::span<const cplx> x, std::span<const cplx> y) {
    const auto dd = newton_coefficients(x, y);
    const std::size_t n = x.size();
    Polynomial acc = Polynomial::constant(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) acc = acc * Polynomial({-x[i], 1.0}) + Polynomial::constant(dd[i]);
    return acc;
}

/// Roots of p', with multiplicity.
inline std::vector<cplx> critical_points(const Polynomial& p, const ToleranceConfig& tol = {}) {
    if (p.degree() < 2) throw MalformedInput("critical_points: degree must be at least 2");
    return roots(p.derivative(), tol);
}

/// Critical points of p merged into clusters (multiplicity as roots of p')
/// together with the corresponding critical values.
struct CriticalData {
    std::vector<Cluster> points;
    std::vector<cplx> values;
};

inline CriticalData critical_data(const Polynomial& p, const ToleranceConfig& tol = {}) {
    CriticalData out;
    if (p.degree() < 2) return out;
    const auto raw = critical_points(p, tol);
    // Multiple roots of p' come back spread by ~eps^(1/m); their centroid is accurate.
    double scale = 1.0;
    for (const cplx& z : raw) scale = std::max(scale, std::abs(z));
    out.points = cluster_points(raw, 1e-4 * scale);
    for (const auto& c : out.points) out.values.push_back(p(c.center));
    return out;
}

/// The d solutions of p(z) = w.
struct Fiber {
    cplx w;
    std::vector<cplx> points;
    bool critical = false;
};

/// Fiber of p over w using precomputed critical data.
///
/// When w agrees with a critical value to within the root tolerance, the
/// coalescing roots are replaced by the critical point itself so that the
/// fiber carries the exact multiplicity. The critical flag is raised when a
/// fiber point has |p'| <= crit_tol or w lies within crit_tol of a critical
/// value.
inline Fiber fiber_with(const Polynomial& p, const CriticalData& crit, cplx w, const ToleranceConfig& tol = {}) {
    if (p.degree() < 1) throw MalformedInput("fiber: polynomial degree must be at least 1");
    Fiber f{w, roots(p - Polynomial::constant(w), tol), false};
    const double wscale = unit_scale(std::abs(w));

    std::vector<bool> snapped(f.points.size(), false);
    for (std::size_t c = 0; c < crit.points.size(); ++c) {
        const double gap = std::abs(crit.values[c] - w);
        if (gap <= tol.crit_tol * wscale) f.critical = true;
        if (gap > tol.root_tol * wscale) continue;
        const cplx center = crit.points[c].center;
        for (int m = 0; m <= crit.points[c].multiplicity; ++m) {
            std::size_t arg = f.points.size();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < f.points.size(); ++j)
                if (!snapped[j] && std::abs(f.points[j] - center) < best) best = std::abs(f.points[j] - center), arg = j;
            if (arg == f.points.size()) break;
            f.points[arg] = center;
            snapped[arg] = true;
        }
    }
    const Polynomial dp = p.derivative();
    for (const cplx& z : f.points)
        if (std::abs(dp(z)) <= tol.crit_tol) f.critical = true;
    return f;
}

/// Fiber p^{-1}(w) for a monic p with distinct roots.
inline Fiber fiber(const Polynomial& p, cplx w, const ToleranceConfig& tol = {}) {
    return fiber_with(p, critical_data(p, tol), w, tol);
}

/// True when every root of p is simple: no critical point of p is also a
/// zero of p (to within crit_tol relative), and computed roots are pairwise
/// farther apart than crit_tol.
inline bool has_simple_roots(const Polynomial& p, const ToleranceConfig& tol = {}) {
    if (p.degree() < 1) return false;
    if (p.degree() == 1) return true;
    const Polynomial a = p.monic();
    for (const cplx& c : critical_points(a, tol))
        if (std::abs(a(c)) <= tol.crit_tol * root_residual_scale(a, c)) return false;
    const auto r = roots(a, tol);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (std::abs(r[i] - r[j]) <= tol.crit_tol) return false;
    return true;
}

}  // namespace mcalc
