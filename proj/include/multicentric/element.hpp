#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "core.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

namespace mcalc {

/// Everything fixed by the choice of centers: the polynomial p, its Lagrange
/// basis, and the scaling entities that define the polyproduct.
///
///   L_ij     = 1 / (lambda_i - lambda_j),                 i != j
///   ell_j    = 1 / p'(lambda_j)
///   sigma_ij = 1 / (p'(lambda_j) (lambda_i - lambda_j)) = L_ij ell_j
class AlgebraContext {
public:
    explicit AlgebraContext(Centers centers, ToleranceConfig tol = {})
        : centers_(std::move(centers)), tol_(tol), p_(centers_.polynomial()), dp_(p_.derivative()),
          delta_(lagrange_basis(centers_)), L_(dim(), dim()), sigma_(dim(), dim()), ell_(dim()) {
        tol_.validate();
        const auto lam = centers_.lambdas();
        const std::size_t d = dim();
        for (std::size_t j = 0; j < d; ++j) {
            cplx prod = 1.0;
            for (std::size_t k = 0; k < d; ++k)
                if (k != j) prod *= lam[j] - lam[k];
            ell_[j] = 1.0 / prod;
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                if (i == j) continue;
                L_(i, j) = 1.0 / (lam[i] - lam[j]);
                sigma_(i, j) = L_(i, j) * ell_[j];
            }
        crit_ = critical_data(p_, tol_);
    }

    /// Context whose centers are the (numerically computed) roots of p.
    static std::shared_ptr<const AlgebraContext> from_polynomial(const Polynomial& p, ToleranceConfig tol = {}) {
        if (p.degree() < 1) throw MalformedInput("variable changer must have degree at least 1");
        if (!p.is_monic(tol.eq_tol)) throw MalformedInput("variable changer must be monic");
        if (!has_simple_roots(p, tol)) throw CentersDegenerate("polynomial roots are not distinct");
        return std::make_shared<const AlgebraContext>(Centers(roots(p, tol), tol), tol);
    }

    const Centers& centers() const { return centers_; }
    int d() const { return centers_.d(); }
    const ToleranceConfig& tol() const { return tol_; }
    const Polynomial& p() const { return p_; }
    const Polynomial& dp() const { return dp_; }
    const std::vector<Polynomial>& delta() const { return delta_; }
    const ComplexMatrix& L() const { return L_; }
    std::span<const cplx> ell() const { return ell_; }
    const ComplexMatrix& sigma() const { return sigma_; }
    const CriticalData& critical() const { return crit_; }

    /// delta_j(z), exact at the centers.
    cplx delta_value(std::size_t j, cplx z) const { return lagrange_basis_value(centers_.lambdas(), j, z); }

    std::vector<cplx> delta_values(cplx z) const {
        std::vector<cplx> out(dim());
        for (std::size_t j = 0; j < dim(); ++j) out[j] = delta_value(j, z);
        return out;
    }

    /// Fiber p^{-1}(w); the fiber over 0 is the centers themselves.
    Fiber fiber(cplx w) const {
        if (w == cplx{0.0}) {
            Fiber f{w, {centers_.lambdas().begin(), centers_.lambdas().end()}, false};
            for (const cplx& z : f.points)
                if (std::abs(dp_(z)) <= tol_.crit_tol) f.critical = true;
            return f;
        }
        return fiber_with(p_, crit_, w, tol_);
    }

    bool operator==(const AlgebraContext& o) const { return centers_ == o.centers_; }

private:
    std::size_t dim() const { return static_cast<std::size_t>(centers_.d()); }

    Centers centers_;
    ToleranceConfig tol_;
    Polynomial p_, dp_;
    std::vector<Polynomial> delta_;
    ComplexMatrix L_, sigma_;
    std::vector<cplx> ell_;
    CriticalData crit_;
};

using ContextPtr = std::shared_ptr<const AlgebraContext>;

inline ContextPtr make_context(std::vector<cplx> lambdas, ToleranceConfig tol = {}) {
    return std::make_shared<const AlgebraContext>(Centers(std::move(lambdas), tol), tol);
}

/// Tolerance for matching p(z) against a stored sample point.
inline double match_tol(cplx w) { return 1e-9 * unit_scale(std::abs(w)); }

/// Finite discretization of the compact set M, with the fiber of every point.
class SampleSet {
public:
    SampleSet(ContextPtr ctx, std::vector<cplx> points) : ctx_(std::move(ctx)), points_(std::move(points)) {
        if (!ctx_) throw MalformedInput("sample set needs a context");
        for (const cplx& w : points_)
            if (!is_finite(w)) throw MalformedInput("sample point is not finite");
        order_.resize(points_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(),
                  [&](std::size_t a, std::size_t b) { return points_[a].real() < points_[b].real(); });
        for (std::size_t a = 0; a < order_.size(); ++a) {
            const cplx wa = points_[order_[a]];
            for (std::size_t b = a + 1; b < order_.size(); ++b) {
                const cplx wb = points_[order_[b]];
                const double tol = std::max(match_tol(wa), match_tol(wb));
                if (wb.real() - wa.real() > tol) break;
                if (std::abs(wa - wb) <= tol)
                    throw MalformedInput("sample points " + std::to_string(order_[a]) + " and " +
                                         std::to_string(order_[b]) + " coincide");
            }
        }
        fibers_.reserve(points_.size());
        for (const cplx& w : points_) fibers_.push_back(ctx_->fiber(w));
    }

    const ContextPtr& ctx() const { return ctx_; }
    std::size_t size() const { return points_.size(); }
    std::span<const cplx> points() const { return points_; }
    cplx point(std::size_t i) const { return points_[i]; }
    const Fiber& fiber(std::size_t i) const { return fibers_[i]; }

    /// Index of the sample matching w within match_tol, if any.
    std::optional<std::size_t> find(cplx w) const {
        std::optional<std::size_t> best;
        double bd = match_tol(w);
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const double dd = std::abs(points_[i] - w);
            if (dd <= bd) bd = dd, best = i;
        }
        return best;
    }

    bool same_as(const SampleSet& o) const {
        return this == &o || (*ctx_ == *o.ctx_ && points_ == o.points_);
    }

private:
    ContextPtr ctx_;
    std::vector<cplx> points_;
    std::vector<std::size_t> order_;
    std::vector<Fiber> fibers_;
};

using SamplesPtr = std::shared_ptr<const SampleSet>;

inline SamplesPtr make_samples(ContextPtr ctx, std::vector<cplx> points) {
    return std::make_shared<const SampleSet>(std::move(ctx), std::move(points));
}

/// An element of the algebra: f : M -> C^d given by its values on the
/// sample set. Values are stored sample by sample, so at(i) is f(w_i).
class VectorFunction {
public:
    VectorFunction(SamplesPtr m, std::vector<cplx> values) : m_(std::move(m)), v_(std::move(values)) {
        if (!m_) throw MalformedInput("vector function needs a sample set");
        if (v_.size() != m_->size() * static_cast<std::size_t>(d()))
            throw MalformedInput("vector function: expected " + std::to_string(m_->size() * d()) + " values, got " +
                                 std::to_string(v_.size()));
        for (const cplx& x : v_)
            if (!is_finite(x)) throw MalformedInput("vector function: non-finite value");
    }

    static VectorFunction generate(SamplesPtr m, const std::function<cplx(cplx w, int j)>& fn) {
        const int d = m->ctx()->d();
        std::vector<cplx> v;
        v.reserve(m->size() * static_cast<std::size_t>(d));
        for (const cplx& w : m->points())
            for (int j = 0; j < d; ++j) v.push_back(fn(w, j));
        return {std::move(m), std::move(v)};
    }

    /// f(w) = a for every sample.
    static VectorFunction constant(SamplesPtr m, std::span<const cplx> a) {
        if (static_cast<int>(a.size()) != m->ctx()->d()) throw MalformedInput("constant: wrong vector length");
        std::vector<cplx> c(a.begin(), a.end());
        return generate(std::move(m), [c](cplx, int j) { return c[static_cast<std::size_t>(j)]; });
    }

    /// The unit 1 = (1, ..., 1).
    static VectorFunction unit(SamplesPtr m) {
        return generate(std::move(m), [](cplx, int) { return cplx{1.0}; });
    }

    int d() const { return m_->ctx()->d(); }
    std::size_t size() const { return m_->size(); }
    const SampleSet& samples() const { return *m_; }
    const SamplesPtr& samples_ptr() const { return m_; }
    const AlgebraContext& ctx() const { return *m_->ctx(); }
    std::span<const cplx> values() const { return v_; }

    std::span<const cplx> at(std::size_t i) const {
        return std::span<const cplx>(v_).subspan(i * static_cast<std::size_t>(d()), static_cast<std::size_t>(d()));
    }
    cplx operator()(std::size_t i, std::size_t j) const { return v_[i * static_cast<std::size_t>(d()) + j]; }

    /// sum_j delta_j(z) f_j(w_i) for a point z of the fiber over w_i.
    cplx hat(std::size_t i, cplx z) const {
        const auto fi = at(i);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < fi.size(); ++j) acc += ctx().delta_value(j, z) * fi[j];
        return acc;
    }

    friend VectorFunction operator+(const VectorFunction& a, const VectorFunction& b) { return a.zip(b, 1.0); }
    friend VectorFunction operator-(const VectorFunction& a, const VectorFunction& b) { return a.zip(b, -1.0); }
    friend VectorFunction operator*(cplx s, const VectorFunction& a) {
        std::vector<cplx> v = a.v_;
        for (cplx& x : v) x *= s;
        return {a.m_, std::move(v)};
    }

    void require_compatible(const VectorFunction& o) const {
        if (!m_->same_as(*o.m_)) throw ContextMismatch("operands live on different centers or sample sets");
    }

private:
    VectorFunction zip(const VectorFunction& b, double sign) const {
        require_compatible(b);
        std::vector<cplx> v = v_;
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += sign * b.v_[k];
        return {m_, std::move(v)};
    }

    SamplesPtr m_;
    std::vector<cplx> v_;
};

/// (box a)_ij = a_i - a_j.
inline ComplexMatrix box(std::span<const cplx> a) {
    ComplexMatrix m(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i] - a[j];
    return m;
}

}  // namespace mcalc
