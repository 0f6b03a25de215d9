#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "algebra.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "random.hpp"

namespace mcalc {

/// Eigenvalue data of A in the form of its minimal polynomial
/// m_A(z) = prod_k (z - alpha_k)^(n_k + 1).
struct SpectrumData {
    struct Entry {
        cplx alpha;
        int n = 0;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    std::vector<Entry> entries;

    /// Sum of (n_k + 1), the degree of m_A.
    int minimal_degree() const {
        int s = 0;
        for (const auto& e : entries) s += e.n + 1;
        return s;
    }

    void validate(std::optional<std::size_t> dim = std::nullopt) const {
        if (entries.empty()) throw MalformedInput("spectrum: no entries");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].n < 0) throw MalformedInput("spectrum: entries[" + std::to_string(i) + "].n is negative");
            if (!is_finite(entries[i].alpha)) throw MalformedInput("spectrum: non-finite alpha");
            for (std::size_t j = i + 1; j < entries.size(); ++j)
                if (entries[i].alpha == entries[j].alpha)
                    throw MalformedInput("spectrum: entries " + std::to_string(i) + " and " + std::to_string(j) +
                                         " repeat an eigenvalue");
        }
        if (dim && static_cast<std::size_t>(minimal_degree()) > *dim)
            throw MalformedInput("spectrum: minimal polynomial degree exceeds matrix dimension");
    }

    Polynomial minimal_polynomial() const {
        Polynomial m = Polynomial::constant(1.0);
        for (const auto& e : entries)
            for (int k = 0; k <= e.n; ++k) m = m * Polynomial({-e.alpha, 1.0});
        return m;
    }

    std::vector<cplx> alphas() const {
        std::vector<cplx> a;
        for (const auto& e : entries) a.push_back(e.alpha);
        return a;
    }

    friend bool operator==(const SpectrumData&, const SpectrumData&) = default;
};

/// True when p^(j)(alpha_k) = 0 for j = 1..n_k at every entry, so that p(A)
/// is diagonalizable.
inline bool is_simplifying(const Polynomial& p, const SpectrumData& s, const ToleranceConfig& tol = {}) {
    for (const auto& e : s.entries) {
        Polynomial dj = p;
        for (int j = 1; j <= e.n; ++j) {
            dj = dj.derivative();
            if (std::abs(dj(e.alpha)) > tol.eq_tol * unit_scale(dj.eval_scale(e.alpha))) return false;
        }
    }
    return true;
}

/// Monic polynomial of minimal degree whose derivatives vanish to order n_k
/// at every alpha_k: the monic rescaling of
///   int_0^z prod_{n_k > 0} (zeta - alpha_k)^(n_k) dzeta,
/// plus c. With only simple eigenvalues this is z + c.
inline Polynomial simplifying_poly(const SpectrumData& s, cplx c, const ToleranceConfig& tol = {}) {
    s.validate();
    Polynomial q = Polynomial::constant(1.0);
    for (const auto& e : s.entries)
        for (int k = 0; k < e.n; ++k) q = q * Polynomial({-e.alpha, 1.0});
    const Polynomial p = antiderivative(q, 0.0).monic() + Polynomial::constant(c);
    if (!is_simplifying(p, s, tol)) throw ConvergenceFailure("simplifying_poly: derivative conditions not met");
    return p;
}

/// p + c for the first c in a deterministic sequence making the roots of
/// p simple and distinct from the given eigenvalues.
///
/// The sequence is c_seed, then b (1.25 w)^k for k = 1..31 with b = c_seed
/// (or 1 if c_seed = 0) and w = exp(2 pi i 0.381966).
inline Polynomial ensure_simple_roots(const Polynomial& p, cplx c_seed, std::span<const cplx> avoid = {},
                                      const ToleranceConfig& tol = {}) {
    if (!p.is_monic(tol.eq_tol)) throw MalformedInput("ensure_simple_roots: polynomial must be monic");
    if (p.degree() < 1) throw MalformedInput("ensure_simple_roots: degree must be at least 1");
    const cplx base = c_seed == cplx{0.0} ? cplx{1.0} : c_seed;
    const cplx step = 1.25 * std::polar(1.0, 2.0 * std::numbers::pi * 0.3819660112501051);
    cplx c = c_seed;
    for (int attempt = 0; attempt < 32; ++attempt) {
        if (attempt > 0) c = base * std::pow(step, attempt);
        const Polynomial cand = p + Polynomial::constant(c);
        if (has_simple_roots(cand, tol)) {
            bool clear = true;
            for (const cplx& r : roots(cand, tol))
                for (const cplx& a : avoid)
                    if (std::abs(r - a) <= tol.crit_tol * unit_scale(std::abs(a))) clear = false;
            if (clear) return cand;
        }
    }
    throw NoSimpleShiftFound("no constant shift gave simple roots in 32 attempts");
}

namespace detail {

inline std::vector<cplx> distinct_images(const Polynomial& p, const SpectrumData& s, double eq_tol) {
    std::vector<cplx> beta;
    for (const auto& e : s.entries) beta.push_back(p(e.alpha));
    return cluster_centers(beta, eq_tol * set_scale(beta));
}

/// The distinct eigenvalues beta_i of p(A) and, per component j, the Newton
/// coefficients of the interpolant q_j of f_j at those points.
struct ChiData {
    std::vector<cplx> beta;
    std::vector<std::vector<cplx>> newton;
};

inline ChiData chi_data(const SpectrumData& s, const VectorFunction& f) {
    s.validate();
    const AlgebraContext& ctx = f.ctx();
    if (!is_simplifying(ctx.p(), s, ctx.tol()))
        throw NotSimplifying("p' does not vanish to the required order at every eigenvalue");
    ChiData out;
    out.beta = distinct_images(ctx.p(), s, ctx.tol().eq_tol);
    std::vector<std::size_t> idx;
    for (const cplx& b : out.beta) {
        const auto i = f.samples().find(b);
        if (!i) throw SampleMiss("f is not sampled at the eigenvalue " + to_string(b) + " of p(A)");
        idx.push_back(*i);
    }
    std::vector<cplx> vals(out.beta.size());
    for (int j = 0; j < f.d(); ++j) {
        for (std::size_t i = 0; i < idx.size(); ++i) vals[i] = f(idx[i], static_cast<std::size_t>(j));
        out.newton.push_back(newton_coefficients(out.beta, vals));
    }
    return out;
}

/// q(B) from Newton coefficients: c_0 + (B - x_0)(c_1 + (B - x_1)(...)).
inline ComplexMatrix newton_eval(std::span<const cplx> x, std::span<const cplx> c, const ComplexMatrix& b) {
    const std::size_t n = b.rows();
    ComplexMatrix acc = c.back() * ComplexMatrix::identity(n);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc = (b - x[i] * ComplexMatrix::identity(n)) * acc;
        for (std::size_t k = 0; k < n; ++k) acc(k, k) += c[i];
    }
    return acc;
}

}  // namespace detail

/// The single polynomial P(z) = sum_j delta_j(z) q_j(p(z)) whose value at A
/// is chi_A(f). Each q_j interpolates f_j at the distinct eigenvalues
/// beta_i = p(alpha_k) of p(A).
inline Polynomial chi_polynomial(const SpectrumData& s, const VectorFunction& f) {
    const auto data = detail::chi_data(s, f);
    const AlgebraContext& ctx = f.ctx();
    Polynomial P;
    for (std::size_t j = 0; j < data.newton.size(); ++j) {
        const auto& c = data.newton[j];
        Polynomial qj = Polynomial::constant(c.back());
        for (std::size_t i = c.size() - 1; i-- > 0;)
            qj = qj * Polynomial({-data.beta[i], 1.0}) + Polynomial::constant(c[i]);
        P = P + ctx.delta()[j] * qj.compose(ctx.p());
    }
    return P;
}

/// chi_A(f) = sum_j delta_j(A) q_j(p(A)) = P(A).
///
/// Only the eigenvalue data of A enters; neither A nor p(A) is diagonalized.
/// The factors are evaluated separately (q_j in Newton form at B = p(A))
/// rather than expanding P, whose monomial coefficients grow quickly with
/// its degree.
inline ComplexMatrix chi_A(const ComplexMatrix& a, const SpectrumData& s, const VectorFunction& f) {
    if (!a.square()) throw MalformedInput("chi_A: matrix must be square");
    s.validate(a.rows());
    const auto data = detail::chi_data(s, f);
    const AlgebraContext& ctx = f.ctx();
    const ComplexMatrix b = mat_poly_eval(ctx.p(), a);
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t j = 0; j < data.newton.size(); ++j)
        out = out + mat_poly_eval(ctx.delta()[j], a) * detail::newton_eval(data.beta, data.newton[j], b);
    return out;
}

/// As above, checking that p is the variable changer of f's context.
inline ComplexMatrix chi_A(const ComplexMatrix& a, const SpectrumData& s, const Polynomial& p,
                           const VectorFunction& f) {
    const Polynomial& own = f.ctx().p();
    const double tol = f.ctx().tol().eq_tol * unit_scale(own.max_abs_coeff());
    bool same = p.degree() == own.degree();
    for (int k = 0; same && k <= own.degree(); ++k) same = std::abs(p.coeff(k) - own.coeff(k)) <= tol;
    if (!same) throw ContextMismatch("p does not match the centers of f");
    return chi_A(a, s, f);
}

/// Hermite interpolant matching phi^(r)(alpha_k) for r = 0..n_k, built from
/// divided differences on repeated nodes.
inline Polynomial hermite_interpolant(const SpectrumData& s, const std::vector<std::vector<cplx>>& values) {
    s.validate();
    if (values.size() != s.entries.size())
        throw InsufficientData("hermite: expected derivative data for " + std::to_string(s.entries.size()) +
                               " eigenvalues, got " + std::to_string(values.size()));
    std::vector<cplx> nodes;
    std::vector<std::size_t> group;
    for (std::size_t k = 0; k < s.entries.size(); ++k) {
        const auto& e = s.entries[k];
        if (values[k].size() < static_cast<std::size_t>(e.n) + 1)
            throw InsufficientData("hermite: eigenvalue " + std::to_string(k) + " needs " + std::to_string(e.n + 1) +
                                   " derivative values");
        for (int r = 0; r <= e.n; ++r) nodes.push_back(e.alpha), group.push_back(k);
    }
    const std::size_t n = nodes.size();
    // dd[i] holds f[z_i, ..., z_{i+level}] after pass `level`.
    std::vector<cplx> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = values[group[i]][0];
    std::vector<cplx> newton{dd[0]};
    double factorial = 1.0;
    for (std::size_t level = 1; level < n; ++level) {
        factorial *= static_cast<double>(level);
        for (std::size_t i = 0; i + level < n; ++i) {
            if (group[i] == group[i + level])
                dd[i] = values[group[i]][level] / factorial;
            else
                dd[i] = (dd[i + 1] - dd[i]) / (nodes[i + level] - nodes[i]);
        }
        newton.push_back(dd[0]);
    }
    Polynomial h = Polynomial::constant(newton[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) h = h * Polynomial({-nodes[i], 1.0}) + Polynomial::constant(newton[i]);
    return h;
}

/// Classical phi(A) from derivative data on the spectrum.
inline ComplexMatrix hermite_matrix_function(const ComplexMatrix& a, const SpectrumData& s,
                                             const std::vector<std::vector<cplx>>& values) {
    if (!a.square()) throw MalformedInput("hermite: matrix must be square");
    s.validate(a.rows());
    return mat_poly_eval(hermite_interpolant(s, values), a);
}

struct SpectralMappingReport {
    std::vector<cplx> eigenvalues;  ///< of chi_A(f), with multiplicity
    std::vector<cplx> matrix_set;   ///< eigenvalues clustered into a set
    std::vector<cplx> quotient_set; ///< { f-hat(alpha_k) }
    std::vector<cplx> full_set;     ///< f-hat over all of p^{-1}(p(sigma(A)))
    double hausdorff = 0.0;         ///< between matrix_set and quotient_set
};

/// Compares sigma(chi_A(f)) with f-hat(sigma(A)).
///
/// Eigenvalues belonging to a nontrivial Jordan structure come back spread
/// by O(eps^(1/m)); pairs within cluster_rel * max(1, |a|, |b|) are merged,
/// and the centroids (which are accurate) represent the set.
inline SpectralMappingReport spectral_mapping_check(const ComplexMatrix& a, const SpectrumData& s,
                                                    const VectorFunction& f, double cluster_rel = 1e-3) {
    SpectralMappingReport r;
    const ComplexMatrix x = chi_A(a, s, f);
    r.eigenvalues = eigenvalues(x, f.ctx().tol());
    for (const auto& c : cluster_points_relative(r.eigenvalues, cluster_rel)) r.matrix_set.push_back(c.center);
    std::vector<cplx> q;
    for (const auto& e : s.entries) q.push_back(gelfand_eval(f, e.alpha));
    r.quotient_set = cluster_centers(q, f.ctx().tol().eq_tol * set_scale(q));
    std::vector<cplx> full;
    for (const cplx& b : detail::distinct_images(f.ctx().p(), s, f.ctx().tol().eq_tol)) {
        const auto i = f.samples().find(b);
        for (const cplx& z : f.samples().fiber(*i).points) full.push_back(f.hat(*i, z));
    }
    r.full_set = cluster_centers(full, f.ctx().tol().eq_tol * set_scale(full));
    r.hausdorff = hausdorff_distance(r.matrix_set, r.quotient_set);
    return r;
}

struct SimilarityResult {
    ComplexMatrix matrix;
    double cond = 0.0;  ///< ||T||_2 ||T^{-1}||_2
};

/// chi_A(f) = T chi_V(f) T^{-1} with V = T^{-1} A T.
inline SimilarityResult chi_similarity(const ComplexMatrix& a, const ComplexMatrix& t, const SpectrumData& s,
                                       const VectorFunction& f) {
    const ComplexMatrix tinv = inverse(t, f.ctx().tol());
    const ComplexMatrix v = tinv * a * t;
    return {t * chi_A(v, s, f) * tinv, operator_norm_2(t) * operator_norm_2(tinv)};
}

// ---------------------------------------------------------------------------
// Constructed test matrices
// ---------------------------------------------------------------------------

struct JordanBlock {
    cplx alpha;
    int size = 1;
    friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

/// A = T (J_1 + ... + J_m) T^{-1}, with T of prescribed 2-norm condition
/// number drawn from the seed (T = I when no seed is given).
struct TestMatrixSpec {
    std::vector<JordanBlock> blocks;
    std::optional<std::uint64_t> similarity_seed;
    double target_cond = 1.0;
    friend bool operator==(const TestMatrixSpec&, const TestMatrixSpec&) = default;
};

struct TestMatrix {
    ComplexMatrix a, t, t_inv, jordan;
    SpectrumData spectrum;
    double cond = 1.0;
};

inline ComplexMatrix jordan_matrix(std::span<const JordanBlock> blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) {
        if (b.size < 1) throw MalformedInput("jordan block size must be positive");
        n += static_cast<std::size_t>(b.size);
    }
    ComplexMatrix j(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.size; ++i) {
            j(off + i, off + i) = b.alpha;
            if (i + 1 < b.size) j(off + i, off + i + 1) = 1.0;
        }
        off += static_cast<std::size_t>(b.size);
    }
    return j;
}

/// Minimal-polynomial data of a block structure: the largest block per
/// eigenvalue decides n_k.
inline SpectrumData spectrum_of_blocks(std::span<const JordanBlock> blocks) {
    SpectrumData s;
    for (const auto& b : blocks) {
        auto it = std::find_if(s.entries.begin(), s.entries.end(), [&](const auto& e) { return e.alpha == b.alpha; });
        if (it == s.entries.end())
            s.entries.push_back({b.alpha, b.size - 1});
        else
            it->n = std::max(it->n, b.size - 1);
    }
    return s;
}

/// Haar-like random unitary from Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    ComplexMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.complex_normal();
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                cplx dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
            }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return q;
}

inline TestMatrix build_test_matrix(const TestMatrixSpec& spec) {
    if (spec.blocks.empty()) throw MalformedInput("test matrix: no blocks");
    if (!(spec.target_cond >= 1.0)) throw MalformedInput("test matrix: target_cond must be at least 1");
    TestMatrix m;
    m.jordan = jordan_matrix(spec.blocks);
    m.spectrum = spectrum_of_blocks(spec.blocks);
    const std::size_t n = m.jordan.rows();
    if (!spec.similarity_seed) {
        m.t = m.t_inv = ComplexMatrix::identity(n);
        m.a = m.jordan;
        return m;
    }
    Rng rng(*spec.similarity_seed);
    const ComplexMatrix u = random_unitary(n, rng), v = random_unitary(n, rng);
    std::vector<cplx> sv(n), sv_inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double e = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        sv[i] = std::pow(spec.target_cond, -e);
        sv_inv[i] = 1.0 / sv[i];
    }
    m.t = u * ComplexMatrix::diagonal(sv) * v.adjoint();
    m.t_inv = v * ComplexMatrix::diagonal(sv_inv) * u.adjoint();
    m.a = m.t * m.jordan * m.t_inv;
    m.cond = spec.target_cond;
    return m;
}

}  // namespace mcalc
