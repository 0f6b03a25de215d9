#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "calculus.hpp"
#include "random.hpp"
#include "transform.hpp"

namespace mcalc::verify {

/// One pass/fail line: `value` must not exceed `threshold`. NaN fails.
struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass() const { return value <= threshold; }
};

/// Outcome of a suite. Contains no timings, so equal inputs give equal reports.
struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
    std::map<std::string, double> metrics;
    std::vector<Check> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
    }
};

struct Options {
    std::uint64_t seed = 7;
    std::optional<int> d;        ///< fix the number of centers instead of cycling
    std::optional<int> samples;  ///< |M| per instance
    std::optional<int> trials;   ///< number of random instances
    ToleranceConfig tol;
};

/// Running maximum that lets NaN through, so a broken value cannot hide.
class Worst {
public:
    void add(double x) {
        if (!(x <= v_)) v_ = x;
    }
    double value() const { return v_; }

private:
    double v_ = 0.0;
};

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// d points in the disc of the given radius, pairwise at least min_sep apart.
inline std::vector<cplx> random_centers(Rng& rng, int d, double min_sep = 0.25, double radius = 1.0) {
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < d) {
        const cplx z = rng.in_disc(radius);
        if (std::all_of(out.begin(), out.end(), [&](cplx y) { return std::abs(y - z) >= min_sep; })) out.push_back(z);
    }
    return out;
}

/// n sample points in a disc, pairwise at least min_gap apart.
inline std::vector<cplx> random_points(Rng& rng, int n, double radius, double min_gap = 1e-3) {
    return random_centers(rng, n, min_gap, radius);
}

inline VectorFunction random_function(Rng& rng, const SamplesPtr& m, double scale = 1.0) {
    return VectorFunction::generate(m, [&](cplx, int) { return scale * rng.complex_normal(); });
}

/// Polynomial components f_j(w) = sum_k c_jk w^k with Gaussian coefficients.
inline std::vector<Polynomial> random_components(Rng& rng, int d, int degree) {
    std::vector<Polynomial> out;
    for (int j = 0; j < d; ++j) {
        std::vector<cplx> c;
        for (int k = 0; k <= degree; ++k) c.push_back(rng.complex_normal());
        out.emplace_back(std::move(c));
    }
    return out;
}

inline VectorFunction sample_components(const SamplesPtr& m, const std::vector<Polynomial>& comps) {
    return VectorFunction::generate(m, [&](cplx w, int j) { return comps[static_cast<std::size_t>(j)](w); });
}

/// Phi(z) = sum_j delta_j(z) f_j(p(z)) for polynomial components.
inline Polynomial transform_polynomial(const AlgebraContext& ctx, const std::vector<Polynomial>& comps) {
    Polynomial phi;
    for (std::size_t j = 0; j < comps.size(); ++j) phi = phi + ctx.delta()[j] * comps[j].compose(ctx.p());
    return phi;
}

/// Derivative data phi^(r)(alpha_k), r = 0..n_k, of a polynomial.
inline std::vector<std::vector<cplx>> derivative_data(const Polynomial& phi, const SpectrumData& s) {
    std::vector<std::vector<cplx>> out;
    for (const auto& e : s.entries) {
        std::vector<cplx> v;
        Polynomial q = phi;
        for (int r = 0; r <= e.n; ++r) {
            v.push_back(q(e.alpha));
            q = q.derivative();
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// A random Jordan structure of total size <= n_max with at most three blocks.
inline std::vector<JordanBlock> random_blocks(Rng& rng, int n_max, int max_block = 3) {
    std::vector<JordanBlock> blocks;
    const int count = rng.integer(1, 3);
    int n = 0;
    std::vector<cplx> used;
    for (int b = 0; b < count; ++b) {
        const int size = rng.integer(1, max_block);
        if (n + size > n_max) break;
        cplx alpha;
        do alpha = rng.in_disc(1.0);
        while (std::any_of(used.begin(), used.end(), [&](cplx u) { return std::abs(u - alpha) < 0.2; }));
        used.push_back(alpha);
        blocks.push_back({alpha, size});
        n += size;
    }
    return blocks;
}

/// A calculus instance: matrix, simplifying polynomial with simple roots,
/// and a sample set covering p(sigma(A)) plus `extra` random points.
struct CalculusInstance {
    TestMatrix matrix;
    ContextPtr ctx;
    SamplesPtr samples;
};

inline CalculusInstance random_calculus_instance(Rng& rng, const std::vector<JordanBlock>& blocks, double cond,
                                                 std::uint64_t sim_seed, int extra, const ToleranceConfig& tol) {
    CalculusInstance inst;
    inst.matrix = build_test_matrix({blocks, sim_seed, cond});
    const Polynomial s = simplifying_poly(inst.matrix.spectrum, rng.in_disc(0.5), tol);
    const Polynomial p = ensure_simple_roots(s, s.coeff(0), inst.matrix.spectrum.alphas(), tol);
    inst.ctx = AlgebraContext::from_polynomial(p, tol);
    std::vector<cplx> m;
    for (const auto& e : inst.matrix.spectrum.entries) m.push_back(p(e.alpha));
    m = cluster_centers(m, tol.eq_tol * set_scale(m));
    while (static_cast<int>(m.size()) < static_cast<int>(inst.matrix.spectrum.entries.size()) + extra) {
        const cplx w = rng.in_disc(2.0);
        if (std::all_of(m.begin(), m.end(), [&](cplx y) { return std::abs(y - w) > 1e-3; })) m.push_back(w);
    }
    inst.samples = make_samples(inst.ctx, m);
    return inst;
}

namespace detail {

inline int pick_d(const Options& o, int trial, int lo = 2, int hi = 5) {
    return o.d ? *o.d : lo + trial % (hi - lo + 1);
}

inline double norm2(const ComplexMatrix& a) { return operator_norm_2(a); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// L(f * g) = f-hat g-hat on every fiber point, plus the algebra laws.
inline Report homomorphism(const Options& o) {
    Report r{"homomorphism", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(200), samples = o.samples.value_or(50);
    r.params = {{"trials", trials}, {"samples", samples}};
    if (o.d) r.params["d"] = *o.d;
    Rng rng(o.seed);
    Worst hom, comm, assoc, forms, unit;
    for (int t = 0; t < trials; ++t) {
        const int d = detail::pick_d(o, t);
        const auto ctx = make_context(random_centers(rng, d), o.tol);
        const auto m = make_samples(ctx, random_points(rng, samples, 2.0));
        const auto f = random_function(rng, m), g = random_function(rng, m), h = random_function(rng, m);
        const auto fg = polyprod(f, g);
        const double scale = unit_scale(sup_norm(f) * sup_norm(g));
        for (std::size_t s = 0; s < m->size(); ++s)
            for (const cplx& z : m->fiber(s).points)
                hom.add(std::abs(fg.hat(s, z) - f.hat(s, z) * g.hat(s, z)) / scale);
        const auto gf = polyprod(g, f);
        const auto had = polyprod_hadamard(f, g);
        const auto left = polyprod(fg, h), right = polyprod(f, polyprod(g, h));
        const auto fu = polyprod(f, VectorFunction::unit(m));
        const double ascale = unit_scale(op_norm(f) * op_norm(g) * sup_norm(h));
        for (std::size_t k = 0; k < fg.values().size(); ++k) {
            comm.add(std::abs(fg.values()[k] - gf.values()[k]) / scale);
            forms.add(std::abs(fg.values()[k] - had.values()[k]) / unit_scale(op_norm(f) * sup_norm(g)));
            assoc.add(std::abs(left.values()[k] - right.values()[k]) / ascale);
            unit.add(std::abs(fu.values()[k] - f.values()[k]) / unit_scale(sup_norm(f)));
        }
    }
    r.checks = {{"gelfand_homomorphism", hom.value(), 1e-10},
                {"commutativity", comm.value(), 1e-10},
                {"associativity", assoc.value(), 1e-10},
                {"sigma_vs_hadamard_form", forms.value(), 1e-12},
                {"unit_law", unit.value(), 1e-12}};
    return r;
}

/// Closed forms for Lambda = {1, -1}: the (w/4) product and the explicit inverse.
inline Report closed_forms(const Options& o) {
    Report r{"closed-forms", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(100), samples = o.samples.value_or(20);
    r.params = {{"trials", trials}, {"samples", samples}};
    Rng rng(o.seed);
    const auto ctx = make_context({1.0, -1.0}, o.tol);
    Worst prod, inv, phi2;
    for (int t = 0; t < trials; ++t) {
        const auto m = make_samples(ctx, random_points(rng, samples, 2.0));
        const auto g = random_function(rng, m);
        // f with |f-hat| >= 0.2 on K keeps the inverse well conditioned.
        std::optional<VectorFunction> f;
        while (!f) {
            auto cand = random_function(rng, m);
            const auto sp = spectrum_multiset(cand);
            if (std::all_of(sp.begin(), sp.end(), [](cplx v) { return std::abs(v) >= 0.2; })) f = std::move(cand);
        }
        const auto generic = polyprod(*f, g);
        const auto gi = invert(*f);
        for (std::size_t s = 0; s < m->size(); ++s) {
            const cplx w = m->point(s);
            const cplx f1 = (*f)(s, 0), f2 = (*f)(s, 1), g1 = g(s, 0), g2 = g(s, 1);
            const cplx corr = (w / 4.0) * (f1 - f2) * (g1 - g2);
            const cplx c1 = f1 * g1 + corr, c2 = f2 * g2 + corr;
            const double ps = unit_scale(std::abs(c1), std::abs(c2));
            prod.add(std::max(std::abs(generic(s, 0) - c1), std::abs(generic(s, 1) - c2)) / ps);

            const auto& z = m->fiber(s).points;
            const cplx big_phi = f->hat(s, z[0]) * f->hat(s, z[1]);
            const cplx alt = f1 * f2 - (w / 4.0) * (f1 - f2) * (f1 - f2);
            phi2.add(std::abs(big_phi - alt) / unit_scale(std::abs(big_phi)));
            const cplx i1 = f2 / big_phi, i2 = f1 / big_phi;
            const double is = unit_scale(std::abs(i1), std::abs(i2));
            inv.add(std::max(std::abs(gi(s, 0) - i1), std::abs(gi(s, 1) - i2)) / is);
        }
    }
    r.checks = {{"product_w_over_4_formula", prod.value(), 1e-12},
                {"inverse_closed_form", inv.value(), 1e-12},
                {"phi_phi_minus_identity", phi2.value(), 1e-12}};
    return r;
}

/// The nilpotent example at the critical value w = -1 of z^2 - 1.
inline Report nilpotent(const Options& o) {
    Report r{"nilpotent", o.seed, {}, {}, {}};
    const auto ctx = make_context({1.0, -1.0}, o.tol);
    const auto m = make_samples(ctx, {-1.0});
    const VectorFunction f(m, {1.0, -1.0});
    const ComplexMatrix b = mult_matrix(f, 0);
    const ComplexMatrix expected(2, 2, {0.5, 0.5, -0.5, -0.5});
    double dev = 0.0;
    for (std::size_t k = 0; k < 4; ++k) dev = std::max(dev, std::abs(b.data()[k] - expected.data()[k]));
    const auto ff = polyprod(f, f);
    double sq = 0.0;
    for (const cplx& x : ff.values()) sq = std::max(sq, std::abs(x));
    const auto rad = radical_basis_at(*ctx, -1.0);
    double rad_dev = rad.size() == 1 ? std::abs(rad[0][0] + rad[0][1]) : 1.0;
    const auto seq = spectral_radius_iter(f, 3);
    double hat = 0.0;
    for (const cplx& z : m->fiber(0).points) hat = std::max(hat, std::abs(f.hat(0, z)));
    r.checks = {{"mult_matrix_exact", dev, 0.0},
                {"square_vanishes", sq, 1e-14},
                {"radical_is_span_1_-1", rad_dev, 0.0},
                {"transform_vanishes_on_fiber", hat, 0.0},
                {"spectral_radius_sequence_zero_from_k1", std::max({seq[1], seq[2], seq[3]}), 0.0}};
    return r;
}

/// eigenvalues(B_f(w)) = { f-hat(z_j(w)) } as multisets.
inline Report eigen(const Options& o) {
    Report r{"eigen", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(200), samples = o.samples.value_or(5);
    r.params = {{"trials", trials}, {"samples", samples}};
    Rng rng(o.seed);
    Worst dev;
    for (int t = 0; t < trials; ++t) {
        const int d = detail::pick_d(o, t);
        const auto ctx = make_context(random_centers(rng, d), o.tol);
        const auto m = make_samples(ctx, random_points(rng, samples, 2.0));
        const auto f = random_function(rng, m);
        for (std::size_t s = 0; s < m->size(); ++s) {
            const ComplexMatrix b = mult_matrix(f, s);
            std::vector<cplx> hats;
            for (const cplx& z : m->fiber(s).points) hats.push_back(f.hat(s, z));
            dev.add(multiset_distance(eigenvalues(b, o.tol), hats) / unit_scale(b.norm_inf()));
        }
    }
    r.checks = {{"eigenvalues_equal_transform_values", dev.value(), 1e-8}};
    return r;
}

/// Character equations on every fiber; standard basis over w0 = 0.
inline Report characters(const Options& o) {
    Report r{"characters", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(50), samples = o.samples.value_or(10);
    r.params = {{"trials", trials}, {"samples", samples}};
    Rng rng(o.seed);
    Worst eq, basis, mult;
    for (int t = 0; t < trials; ++t) {
        const int d = detail::pick_d(o, t, 2, 6);
        const auto ctx = make_context(random_centers(rng, d), o.tol);
        auto pts = random_points(rng, samples, 2.0);
        pts.push_back(0.0);
        const auto m = make_samples(ctx, pts);
        for (const cplx& w0 : pts) {
            const auto rep = characters_at(*m, w0);
            eq.add(rep.max_residual);
            if (w0 == cplx{0.0})
                for (std::size_t k = 0; k < rep.etas.size(); ++k)
                    for (std::size_t j = 0; j < rep.etas[k].size(); ++j)
                        basis.add(std::abs(rep.etas[k][j] - (j == k ? 1.0 : 0.0)));
        }
        // Multiplicativity on constant pairs at one sample.
        const std::size_t s = static_cast<std::size_t>(rng.integer(0, samples - 1));
        const auto single = make_samples(ctx, {pts[s]});
        const auto rep = characters_at(*ctx, pts[s]);
        for (int pair = 0; pair < 100 / trials + 2; ++pair) {
            const auto a = random_function(rng, single), b = random_function(rng, single);
            const auto ab = polyprod(a, b);
            for (const auto& eta : rep.etas) {
                cplx xa = 0.0, xb = 0.0, xab = 0.0;
                for (std::size_t j = 0; j < eta.size(); ++j)
                    xa += eta[j] * a(0, j), xb += eta[j] * b(0, j), xab += eta[j] * ab(0, j);
                mult.add(std::abs(xab - xa * xb) / unit_scale(std::abs(xa) * std::abs(xb), op_norm(a) * sup_norm(b)));
            }
        }
    }
    r.checks = {{"character_equations", eq.value(), 1e-10},
                {"standard_basis_at_w0_zero", basis.value(), 0.0},
                {"multiplicativity", mult.value(), 1e-10}};
    return r;
}

/// ||f^(2^k)||^(1/2^k) against |f-hat|_K, and exact zeros for radical elements.
inline Report spectral_radius(const Options& o) {
    Report r{"spectral-radius", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(50), samples = o.samples.value_or(10);
    constexpr int k_max = 10;
    r.params = {{"trials", trials}, {"samples", samples}, {"k_max", k_max}};
    Rng rng(o.seed);
    Worst rel, radical;
    int accepted = 0;
    for (int t = 0; accepted < trials; ++t) {
        const int d = detail::pick_d(o, t);
        const auto ctx = make_context(random_centers(rng, d), o.tol);
        const auto m = make_samples(ctx, random_points(rng, samples, 2.0));
        const auto f = random_function(rng, m);
        const double rho = mcalc::spectral_radius(f);
        if (rho < 0.1) continue;
        ++accepted;
        const auto seq = spectral_radius_iter(f, k_max);
        rel.add(std::abs(seq.back() - rho) / rho);

        // Radical element supported on the critical value of one critical point.
        const auto& crit = ctx->critical();
        const std::size_t c = static_cast<std::size_t>(rng.integer(0, static_cast<int>(crit.values.size()) - 1));
        const cplx wc = crit.values[c];
        auto pts = random_points(rng, 3, 2.0);
        std::erase_if(pts, [&](cplx w) { return std::abs(w - wc) < 1e-2; });
        pts.push_back(wc);
        const auto mr = make_samples(ctx, pts);
        const auto basis = radical_basis_at(*ctx, wc);
        if (basis.empty()) {
            radical.add(1.0);
            continue;
        }
        const auto nil = VectorFunction::generate(mr, [&](cplx w, int j) {
            return w == wc ? basis[0][static_cast<std::size_t>(j)] : cplx{0.0};
        });
        const auto nseq = spectral_radius_iter(nil, k_max);
        for (int k = 0; k <= k_max; ++k)
            if ((1 << k) >= d) radical.add(nseq[static_cast<std::size_t>(k)]);
    }
    r.metrics["instances_drawn"] = accepted;
    r.checks = {{"gelfand_formula_rel_error_k10", rel.value(), 0.05},
                {"radical_sequence_exact_zero", radical.value(), 0.0}};
    return r;
}

/// Inverse norm bound (d = 2, C = 1) and the resolvent lower bound.
inline Report inversion(const Options& o) {
    Report r{"inversion", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(100), samples = o.samples.value_or(20);
    r.params = {{"trials", trials}, {"samples", samples}};
    Rng rng(o.seed);
    const auto ctx2 = make_context({1.0, -1.0}, o.tol);
    Worst c2, lower, cgen;
    for (int t = 0; t < trials; ++t) {
        const auto m = make_samples(ctx2, random_points(rng, samples, 2.0));
        const auto f = random_function(rng, m);
        double eta = std::numeric_limits<double>::infinity();
        for (const cplx& v : spectrum_multiset(f)) eta = std::min(eta, std::abs(v));
        if (eta < 1e-3) continue;
        const auto g = invert(f);
        c2.add(op_norm(g) * eta * eta / op_norm(f));

        const int d = detail::pick_d(o, t);
        const auto ctx = make_context(random_centers(rng, d), o.tol);
        const auto mg = make_samples(ctx, random_points(rng, samples, 2.0));
        const auto h = random_function(rng, mg);
        const auto sp = spectrum_multiset(h);
        cplx lambda;
        double dist;
        do {
            lambda = rng.in_disc(4.0);
            dist = std::numeric_limits<double>::infinity();
            for (const cplx& v : sp) dist = std::min(dist, std::abs(lambda - v));
        } while (dist < 0.05);
        const auto rep = resolvent_bound_check(h, lambda);
        lower.add(std::max(0.0, rep.lower_bound / rep.resolvent_norm - 1.0));
        cgen.add(rep.empirical_c);
    }
    r.metrics["max_empirical_resolvent_constant"] = cgen.value();
    r.checks = {{"d2_inverse_constant_minus_1", std::max(0.0, c2.value() - 1.0), 1e-8},
                {"resolvent_lower_bound_excess", lower.value(), o.tol.eq_tol}};
    return r;
}

/// Jordan-block calculus: Hermite oracle on J_3(0) with p = z^3 + 1, and the
/// homomorphism on random similarity-transformed Jordan matrices.
inline Report jordan(const Options& o) {
    Report r{"jordan", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(50);
    r.params = {{"trials", trials}};
    Rng rng(o.seed);
    ToleranceConfig tol = o.tol;

    Worst hermite, hom, sim, bound, bound_normal;
    {
        const auto ctx = AlgebraContext::from_polynomial(Polynomial({1.0, 0.0, 0.0, 1.0}), tol);
        const auto m = make_samples(ctx, {1.0, 0.5, cplx{0.0, 2.0}});
        const std::vector<JordanBlock> jb{{0.0, 3}};
        const ComplexMatrix a = jordan_matrix(jb);
        const SpectrumData s = spectrum_of_blocks(jb);
        for (int t = 0; t < trials; ++t) {
            const auto comps = random_components(rng, 3, rng.integer(0, 3));
            const auto f = sample_components(m, comps);
            const auto x = chi_A(a, s, ctx->p(), f);
            const auto h = hermite_matrix_function(a, s, derivative_data(transform_polynomial(*ctx, comps), s));
            hermite.add(detail::norm2(x - h) / unit_scale(detail::norm2(h)));
        }
    }
    for (int t = 0; t < trials; ++t) {
        const double cond = rng.uniform(1.0, 50.0);
        const auto inst = random_calculus_instance(rng, random_blocks(rng, 8), cond, o.seed * 1000 + t, 2, tol);
        const auto f = random_function(rng, inst.samples), g = random_function(rng, inst.samples);
        const auto& a = inst.matrix.a;
        const auto& s = inst.matrix.spectrum;
        const auto xf = chi_A(a, s, f), xg = chi_A(a, s, g), xfg = chi_A(a, s, polyprod(f, g));
        const double nf = detail::norm2(xf), ng = detail::norm2(xg);
        hom.add(detail::norm2(xfg - xf * xg) / (cond * unit_scale(nf * ng)));

        const auto conj = chi_similarity(inst.matrix.jordan, inst.matrix.t_inv, s, f);
        sim.add(detail::norm2(conj.matrix - chi_A(inst.matrix.jordan, s, f)) / (cond * unit_scale(nf)));

        // With p(A) = T D T^{-1}, ||f_j(p(A))|| <= cond(T) |f_j|_M; the bound
        // without the factor needs p(A) normal, i.e. a unitary T.
        const auto delta_sum = [](const CalculusInstance& c) {
            double sum = 0.0;
            for (const auto& dj : c.ctx->delta()) sum += detail::norm2(mat_poly_eval(dj, c.matrix.a));
            return sum;
        };
        bound.add(std::max(0.0, nf - cond * delta_sum(inst) * sup_norm(f)));
        const auto normal = random_calculus_instance(rng, random_blocks(rng, 8), 1.0, o.seed * 1000 + t, 2, tol);
        const auto fn = random_function(rng, normal.samples);
        const double xn = detail::norm2(chi_A(normal.matrix.a, normal.matrix.spectrum, fn));
        bound_normal.add(std::max(0.0, xn - delta_sum(normal) * sup_norm(fn)));
    }
    r.checks = {{"hermite_oracle_J3", hermite.value(), 1e-8},
                {"homomorphism_over_cond", hom.value(), 1e-8},
                {"similarity_consistency_over_cond", sim.value(), 1e-6},
                {"continuity_bound_excess_normal_pA", bound_normal.value(), 1e-8},
                {"continuity_bound_excess_cond_scaled", bound.value(), 1e-8}};
    return r;
}

/// sigma(chi_A(f)) = f-hat(sigma(A)) on random instances and the A = 2I case.
inline Report specmap(const Options& o) {
    Report r{"specmap", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(100);
    r.params = {{"trials", trials}};
    Rng rng(o.seed);
    Worst haus;
    for (int t = 0; t < trials; ++t) {
        const auto inst = random_calculus_instance(rng, random_blocks(rng, 8), 50.0, o.seed * 7919 + t, 0, o.tol);
        const auto f = random_function(rng, inst.samples);
        haus.add(spectral_mapping_check(inst.matrix.a, inst.matrix.spectrum, f).hausdorff);
    }
    const auto ctx = make_context({1.0, -1.0}, o.tol);
    const auto m = make_samples(ctx, {3.0});
    const auto f = random_function(rng, m);
    const SpectrumData s{{{2.0, 0}}};
    const auto rep = spectral_mapping_check(2.0 * ComplexMatrix::identity(2), s, f);
    const double scalar_dev = [&] {
        const auto x = chi_A(2.0 * ComplexMatrix::identity(2), s, f);
        return detail::norm2(x - f.hat(0, 2.0) * ComplexMatrix::identity(2));
    }();
    r.metrics["twoI_full_set_size"] = static_cast<double>(rep.full_set.size());
    r.metrics["twoI_matrix_set_size"] = static_cast<double>(rep.matrix_set.size());
    r.checks = {{"random_instances_hausdorff", haus.value(), 1e-6},
                {"twoI_hausdorff", rep.hausdorff, 1e-6},
                {"twoI_chi_is_scalar_fhat2", scalar_dev, 1e-12},
                {"twoI_full_set_strictly_larger",
                 rep.full_set.size() > rep.matrix_set.size() && hausdorff_distance(rep.full_set, rep.matrix_set) > 0.1
                     ? 0.0
                     : 1.0,
                 0.0}};
    return r;
}

/// Growth of ||f|| when phi = max(Re z, 0)^alpha is reconstructed on the
/// annulus eps <= |z| <= 2 around the critical point of z^2 - 1.
struct BlowupResult {
    std::vector<double> eps, norms;
    double slope = 0.0;
};

inline BlowupResult blowup_experiment(double alpha, int radii = 40, int angles = 64, const ToleranceConfig& tol = {}) {
    const auto ctx = make_context({1.0, -1.0}, tol);
    const auto phi = [alpha](cplx z) { return cplx{std::pow(std::max(z.real(), 0.0), alpha)}; };
    BlowupResult out;
    for (int e = 3; e <= 10; ++e) {
        const double eps = std::ldexp(1.0, -e);
        std::vector<cplx> ws;
        std::vector<cplx> vals;
        for (int i = 0; i < radii; ++i) {
            const double rad = eps * std::pow(2.0 / eps, static_cast<double>(i) / (radii - 1));
            for (int k = 0; k < angles; ++k) {
                const double theta = -std::numbers::pi / 2 + std::numbers::pi * k / angles;
                const cplx z = std::polar(rad, theta);
                const cplx w = ctx->p()(z);
                const std::vector<PhiSample> fib{{z, phi(z)}, {-z, phi(-z)}};
                const auto fk = inverse_transform(*ctx, fib, w);
                ws.push_back(w);
                vals.insert(vals.end(), fk.begin(), fk.end());
            }
        }
        const VectorFunction f(make_samples(ctx, ws), vals);
        out.eps.push_back(eps);
        out.norms.push_back(op_norm(f));
    }
    // Least-squares slope of log ||f|| against log eps.
    const std::size_t n = out.eps.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(out.eps[i]), y = std::log(out.norms[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

inline Report blowup(const Options& o) {
    Report r{"blowup", o.seed, {}, {}, {}};
    constexpr double alpha = 0.5;
    r.params = {{"alpha", alpha}};
    const auto res = blowup_experiment(alpha, 40, 64, o.tol);
    r.metrics["slope"] = res.slope;
    for (std::size_t i = 0; i < res.eps.size(); ++i)
        r.metrics["norm_eps_2^-" + std::to_string(i + 3)] = res.norms[i];
    r.checks = {{"slope_minus_expected", std::abs(res.slope + (1.0 - alpha)), 0.15}};
    return r;
}

/// Calculus with f_j = a_j + b_j |w - w_c|^(1/4) at the critical value
/// w_c = -1 of p = z^2 - 1, where A carries a 2x2 Jordan block at 0.
inline Report nondiff(const Options& o) {
    Report r{"nondiff", o.seed, {}, {}, {}};
    const int trials = o.trials.value_or(50);
    r.params = {{"trials", trials}};
    Rng rng(o.seed);
    const auto ctx = make_context({1.0, -1.0}, o.tol);
    const cplx wc = -1.0;
    Worst hom, failures, hermite_gap;
    for (int t = 0; t < trials; ++t) {
        std::vector<JordanBlock> blocks{{0.0, 2}};
        const int extra = rng.integer(1, 4);
        std::vector<cplx> used{0.0};
        for (int b = 0; b < extra; ++b) {
            cplx alpha;
            do alpha = b == 0 ? rng.in_disc(0.1) : rng.in_disc(1.2);
            while (std::any_of(used.begin(), used.end(), [&](cplx u) { return std::abs(u - alpha) < 0.02; }));
            used.push_back(alpha);
            blocks.push_back({alpha, 1});
        }
        const double cond = rng.uniform(1.0, 50.0);
        const TestMatrix tm = build_test_matrix({blocks, o.seed * 31 + t, cond});
        std::vector<cplx> m;
        for (const auto& e : tm.spectrum.entries) m.push_back(ctx->p()(e.alpha));
        m = cluster_centers(m, o.tol.eq_tol * set_scale(m));
        const auto ms = make_samples(ctx, m);
        std::vector<cplx> a(4), b(4);
        for (auto& x : a) x = rng.complex_normal();
        for (auto& x : b) x = rng.complex_normal();
        const auto make = [&](std::size_t off) {
            return VectorFunction::generate(ms, [&, off](cplx w, int j) {
                const auto k = off + static_cast<std::size_t>(j);
                return a[k] + b[k] * std::pow(std::abs(w - wc), 0.25);
            });
        };
        try {
            const auto f = make(0), g = make(2);
            const auto xf = chi_A(tm.a, tm.spectrum, f), xg = chi_A(tm.a, tm.spectrum, g);
            const auto xfg = chi_A(tm.a, tm.spectrum, polyprod(f, g));
            hom.add(detail::norm2(xfg - xf * xg) / (cond * unit_scale(detail::norm2(xf) * detail::norm2(xg))));
            // Only phi(0) and phi'(0) of the transform enter at the Jordan
            // eigenvalue; both exist although f is not differentiable at w_c.
            const auto j2 = chi_A(jordan_matrix(std::vector<JordanBlock>{{0.0, 2}}), SpectrumData{{{0.0, 1}}}, f);
            // delta_1' = 1/2 and delta_2' = -1/2 give the superdiagonal.
            const auto idx = *ms->find(wc);
            const cplx phi0 = gelfand_eval(f, 0.0), dphi0 = (f(idx, 0) - f(idx, 1)) / 2.0;
            hermite_gap.add(std::max(std::abs(j2(0, 0) - phi0), std::abs(j2(0, 1) - dphi0)));
        } catch (const error&) {
            failures.add(1.0);
        }
    }
    r.checks = {{"chi_defined_failures", failures.value(), 0.0},
                {"homomorphism_over_cond", hom.value(), 1e-8},
                {"jordan_entries_from_transform_at_0", hermite_gap.value(), 1e-12}};
    return r;
}

inline const std::vector<std::pair<std::string, std::function<Report(const Options&)>>>& suites() {
    static const std::vector<std::pair<std::string, std::function<Report(const Options&)>>> all{
        {"homomorphism", homomorphism}, {"closed-forms", closed_forms}, {"nilpotent", nilpotent},
        {"eigen", eigen},               {"characters", characters},     {"spectral-radius", spectral_radius},
        {"inversion", inversion},       {"jordan", jordan},             {"specmap", specmap},
        {"blowup", blowup},             {"nondiff", nondiff}};
    return all;
}

inline std::vector<Report> run(const std::string& name, const Options& o) {
    std::vector<Report> out;
    for (const auto& [key, fn] : suites())
        if (name == "all" || name == key) out.push_back(fn(o));
    if (out.empty()) throw MalformedInput("unknown verify suite '" + name + "'");
    return out;
}

}  // namespace mcalc::verify
