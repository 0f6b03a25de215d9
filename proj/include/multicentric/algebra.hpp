#pragma once

#include <optional>
#include <vector>

#include "element.hpp"
#include "transform.hpp"

namespace mcalc {

// ---------------------------------------------------------------------------
// Product and multiplication operator
// ---------------------------------------------------------------------------

/// Polyproduct, componentwise:
///
///   (f*g)_i(w) = f_i g_i - w sum_{j != i} sigma_ij (f_i - f_j)(g_i - g_j).
///
/// This is the form under which L(f*g) = (Lf)(Lg).
inline VectorFunction polyprod(const VectorFunction& f, const VectorFunction& g) {
    f.require_compatible(g);
    const std::size_t d = static_cast<std::size_t>(f.d());
    const ComplexMatrix& sigma = f.ctx().sigma();
    std::vector<cplx> out(f.values().size());
    for (std::size_t s = 0; s < f.size(); ++s) {
        const cplx w = f.samples().point(s);
        const auto a = f.at(s), b = g.at(s);
        for (std::size_t i = 0; i < d; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) acc += sigma(i, j) * (a[i] - a[j]) * (b[i] - b[j]);
            out[s * d + i] = a[i] * b[i] - w * acc;
        }
    }
    return {f.samples_ptr(), std::move(out)};
}

/// The same product written with Hadamard products of boxed vectors:
/// f o g - w (L o box f o box g) ell.
inline VectorFunction polyprod_hadamard(const VectorFunction& f, const VectorFunction& g) {
    f.require_compatible(g);
    const std::size_t d = static_cast<std::size_t>(f.d());
    const ComplexMatrix& L = f.ctx().L();
    const auto ell = f.ctx().ell();
    std::vector<cplx> out(f.values().size());
    for (std::size_t s = 0; s < f.size(); ++s) {
        const cplx w = f.samples().point(s);
        const ComplexMatrix bf = box(f.at(s)), bg = box(g.at(s));
        for (std::size_t i = 0; i < d; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += L(i, j) * bf(i, j) * bg(i, j) * ell[j];
            out[s * d + i] = f(s, i) * g(s, i) - w * acc;
        }
    }
    return {f.samples_ptr(), std::move(out)};
}

/// B_f(w_i): the matrix with (f*g)(w_i) = B_f(w_i) g(w_i).
inline ComplexMatrix mult_matrix(const VectorFunction& f, std::size_t sample) {
    if (sample >= f.size()) throw MalformedInput("mult_matrix: sample index out of range");
    const std::size_t d = static_cast<std::size_t>(f.d());
    const ComplexMatrix& sigma = f.ctx().sigma();
    const cplx w = f.samples().point(sample);
    const auto a = f.at(sample);
    ComplexMatrix b(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        cplx diag = a[i];
        for (std::size_t j = 0; j < d; ++j) {
            if (j == i) continue;
            const cplx t = w * sigma(i, j) * (a[i] - a[j]);
            b(i, j) = t;
            diag -= t;
        }
        b(i, i) = diag;
    }
    return b;
}

/// f^n, with f^0 the unit.
inline VectorFunction power(const VectorFunction& f, int n) {
    if (n < 0) throw MalformedInput("power: negative exponent; use invert");
    VectorFunction acc = VectorFunction::unit(f.samples_ptr());
    for (int k = 0; k < n; ++k) acc = polyprod(f, acc);
    return acc;
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

/// |f|_M = max over samples of max_j |f_j(w)|.
inline double sup_norm(const VectorFunction& f) {
    double m = 0.0;
    for (const cplx& x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

/// Algebra norm sup_{|g|_M <= 1} |f*g|_M. On a finite sample set the
/// supremum decouples per sample, giving max_w ||B_f(w)||_inf.
inline double op_norm(const VectorFunction& f) {
    double m = 0.0;
    for (std::size_t s = 0; s < f.size(); ++s) m = std::max(m, mult_matrix(f, s).norm_inf());
    return m;
}

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

/// f-hat over every fiber point of every sample, with multiplicity.
inline std::vector<cplx> spectrum_multiset(const VectorFunction& f) {
    std::vector<cplx> out;
    out.reserve(f.size() * static_cast<std::size_t>(f.d()));
    for (std::size_t s = 0; s < f.size(); ++s)
        for (const cplx& z : f.samples().fiber(s).points) out.push_back(f.hat(s, z));
    return out;
}

inline double set_scale(std::span<const cplx> v) {
    double m = 1.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

/// sigma(f) = { f-hat(z) : z in p^{-1}(M) } as a set: values within
/// eq_tol * scale are merged into their centroid.
inline std::vector<cplx> spectrum(const VectorFunction& f) {
    const auto ms = spectrum_multiset(f);
    return cluster_centers(ms, f.ctx().tol().eq_tol * set_scale(ms));
}

/// |f-hat|_K, the spectral radius.
inline double spectral_radius(const VectorFunction& f) {
    double r = 0.0;
    for (const cplx& v : spectrum_multiset(f)) r = std::max(r, std::abs(v));
    return r;
}

/// ||f^(2^k)||^(1/2^k) for k = 0..k_max by repeated squaring.
///
/// The iterate is renormalised after each squaring so the sequence cannot
/// overflow. Once a square drops below 1e-12 relative to its unit-norm
/// factor, the element is treated as nilpotent and the rest is exactly 0.
inline std::vector<double> spectral_radius_iter(const VectorFunction& f, int k_max) {
    if (k_max < 0) throw MalformedInput("spectral_radius_iter: k_max must be nonnegative");
    std::vector<double> out;
    VectorFunction g = f;
    double log_scale = 0.0;
    bool zero = false;
    for (int k = 0; k <= k_max; ++k) {
        if (!zero) {
            const double n = op_norm(g);
            zero = k == 0 ? n == 0.0 : n <= 1e-12;
            if (!zero) {
                const double value = std::exp((log_scale + std::log(n)) / std::ldexp(1.0, k));
                if (!std::isfinite(value)) throw Overflow("spectral_radius_iter: non-finite norm at k = " + std::to_string(k));
                out.push_back(value);
                const VectorFunction h = (1.0 / n) * g;
                log_scale = 2.0 * (log_scale + std::log(n));
                g = polyprod(h, h);
                continue;
            }
        }
        out.push_back(0.0);
    }
    return out;
}

/// Smallest n <= d with ||f^n|| <= 1e-12 max(1, ||f||)^n, if any.
inline std::optional<int> nilpotency_index(const VectorFunction& f) {
    const double scale = unit_scale(op_norm(f));
    VectorFunction g = f;
    for (int n = 1; n <= f.d(); ++n) {
        if (op_norm(g) <= 1e-12 * std::pow(scale, n)) return n;
        g = polyprod(f, g);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

/// g with f*g = 1, solved sample by sample from B_f(w) g(w) = 1.
inline VectorFunction invert(const VectorFunction& f) {
    const auto& tol = f.ctx().tol();
    const double scale = unit_scale(sup_norm(f));
    for (std::size_t s = 0; s < f.size(); ++s)
        for (const cplx& z : f.samples().fiber(s).points) {
            const cplx v = f.hat(s, z);
            if (std::abs(v) <= tol.eq_tol * scale)
                throw NotInvertible("f-hat vanishes at z = " + to_string(z) + " (value " + to_string(v) + ")");
        }
    const std::size_t d = static_cast<std::size_t>(f.d());
    const std::vector<cplx> ones(d, cplx{1.0});
    std::vector<cplx> out;
    out.reserve(f.values().size());
    for (std::size_t s = 0; s < f.size(); ++s) {
        try {
            const auto g = solve(mult_matrix(f, s), ones, tol);
            out.insert(out.end(), g.begin(), g.end());
        } catch (const SingularMatrix& e) {
            throw NotInvertible("multiplication matrix singular at w = " + to_string(f.samples().point(s)));
        }
    }
    VectorFunction g(f.samples_ptr(), std::move(out));
    const VectorFunction check = polyprod(f, g);
    const double bound = tol.eq_tol * unit_scale(op_norm(f) * sup_norm(g));
    for (const cplx& x : check.values())
        if (std::abs(x - 1.0) > bound)
            throw NotInvertible("f*g deviates from the unit by " + std::to_string(std::abs(x - 1.0)));
    return g;
}

// ---------------------------------------------------------------------------
// Characteristic function
// ---------------------------------------------------------------------------

/// Coefficients of pi_f(lambda, w) = prod_j (lambda - f-hat(z_j(w)))
///                                 = lambda^d - Phi_1 lambda^(d-1) + ... + (-1)^d Phi_d
/// at each sample.
struct CharacteristicCoeffs {
    std::vector<cplx> w;
    std::vector<std::vector<cplx>> phi;  ///< phi[s][k-1] = Phi_k(w_s)

    cplx pi(cplx lambda, std::size_t s) const {
        const auto& c = phi[s];
        cplx acc = 1.0;
        double sign = -1.0;
        for (const cplx& x : c) {
            acc = acc * lambda + sign * x;
            sign = -sign;
        }
        return acc;
    }
};

inline CharacteristicCoeffs characteristic(const VectorFunction& f) {
    CharacteristicCoeffs out;
    const int d = f.d();
    for (std::size_t s = 0; s < f.size(); ++s) {
        std::vector<cplx> vals;
        for (const cplx& z : f.samples().fiber(s).points) vals.push_back(f.hat(s, z));
        const Polynomial pi = Polynomial::from_roots(vals);
        std::vector<cplx> phi(static_cast<std::size_t>(d));
        double sign = -1.0;
        for (int k = 1; k <= d; ++k, sign = -sign) phi[static_cast<std::size_t>(k - 1)] = sign * pi.coeff(d - k);
        out.w.push_back(f.samples().point(s));
        out.phi.push_back(std::move(phi));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Resolvent
// ---------------------------------------------------------------------------

struct ResolventReport {
    cplx lambda;
    double empirical_c = 0.0;     ///< max_w |R(w)|_inf |pi_f(lambda,w)| / (|lambda| + ||f||)^(d-1)
    double distance = 0.0;        ///< dist(lambda, sigma(f))
    double lower_bound = 0.0;     ///< 1 / distance
    double resolvent_norm = 0.0;  ///< ||(lambda 1 - f)^{-1}||
    bool lower_bound_holds = false;
};

inline ResolventReport resolvent_bound_check(const VectorFunction& f, cplx lambda) {
    ResolventReport r;
    r.lambda = lambda;
    const VectorFunction shifted = lambda * VectorFunction::unit(f.samples_ptr()) - f;
    const VectorFunction res = invert(shifted);
    const auto chars = characteristic(f);
    const double denom = std::pow(std::abs(lambda) + op_norm(f), f.d() - 1);
    for (std::size_t s = 0; s < f.size(); ++s) {
        double rmax = 0.0;
        for (const cplx& x : res.at(s)) rmax = std::max(rmax, std::abs(x));
        r.empirical_c = std::max(r.empirical_c, rmax * std::abs(chars.pi(lambda, s)) / denom);
    }
    r.distance = std::numeric_limits<double>::infinity();
    for (const cplx& v : spectrum_multiset(f)) r.distance = std::min(r.distance, std::abs(lambda - v));
    r.lower_bound = 1.0 / r.distance;
    r.resolvent_norm = op_norm(res);
    r.lower_bound_holds = r.lower_bound <= r.resolvent_norm * (1.0 + f.ctx().tol().eq_tol);
    return r;
}

// ---------------------------------------------------------------------------
// Characters, radical, quotient
// ---------------------------------------------------------------------------

struct CharacterReport {
    cplx w0;
    std::vector<cplx> points;               ///< fiber over w0
    std::vector<std::vector<cplx>> etas;    ///< eta^(k)_j = delta_j(z_k)
    double max_residual = 0.0;              ///< worst defect in the character equations, relative
};

/// Residual of eta against the multiplicative-functional equations at w0:
///   eta_i^2   = eta_i - w0 sum_{j != i} (sigma_ij eta_i + sigma_ji eta_j)
///   eta_i eta_j = w0 (sigma_ij eta_i + sigma_ji eta_j),  i != j
///   sum eta_i = 1
inline double character_residual(const AlgebraContext& ctx, cplx w0, std::span<const cplx> eta) {
    const std::size_t d = eta.size();
    const ComplexMatrix& sigma = ctx.sigma();
    double emax = 0.0;
    for (const cplx& e : eta) emax = std::max(emax, std::abs(e));
    const double scale = unit_scale(emax * emax, std::abs(w0) * sigma.max_abs() * emax);
    double worst = 0.0;
    cplx total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        total += eta[i];
        cplx acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            if (j == i) continue;
            const cplx pair = sigma(i, j) * eta[i] + sigma(j, i) * eta[j];
            acc += pair;
            worst = std::max(worst, std::abs(eta[i] * eta[j] - w0 * pair));
        }
        worst = std::max(worst, std::abs(eta[i] * eta[i] - (eta[i] - w0 * acc)));
    }
    worst = std::max(worst, std::abs(total - 1.0));
    return worst / scale;
}

/// The d characters living over w0, eta^(k) = (delta_1(z_k), ..., delta_d(z_k)).
inline CharacterReport characters_at(const AlgebraContext& ctx, cplx w0) {
    CharacterReport r;
    r.w0 = w0;
    r.points = ctx.fiber(w0).points;
    for (const cplx& z : r.points) {
        r.etas.push_back(ctx.delta_values(z));
        r.max_residual = std::max(r.max_residual, character_residual(ctx, w0, r.etas.back()));
    }
    return r;
}

inline CharacterReport characters_at(const SampleSet& m, cplx w0) {
    if (!m.find(w0)) throw SampleMiss("w0 = " + to_string(w0) + " is not in M");
    return characters_at(*m.ctx(), w0);
}

/// Null space of (delta_j(z_i))_ij over the fiber of w0: the values a such
/// that f(w0) = a has vanishing transform on the whole fiber. Nonempty only
/// at critical values.
inline std::vector<std::vector<cplx>> radical_basis_at(const AlgebraContext& ctx, cplx w0) {
    const Fiber fib = ctx.fiber(w0);
    const std::size_t d = static_cast<std::size_t>(ctx.d());
    ComplexMatrix e(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) e(i, j) = ctx.delta_value(j, fib.points[i]);
    return null_space(e, ctx.tol().eq_tol);
}

/// Spectrum of the coset [f] modulo the ideal of elements vanishing on K0:
/// { f-hat(z) : z in K0 }.
inline std::vector<cplx> quotient_spectrum(const VectorFunction& f, std::span<const cplx> k0) {
    std::vector<cplx> vals;
    for (const cplx& z : k0) vals.push_back(gelfand_eval(f, z));
    return cluster_centers(vals, f.ctx().tol().eq_tol * set_scale(vals));
}

}  // namespace mcalc
