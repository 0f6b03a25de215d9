#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace mcalc;
using namespace std::complex_literals;

namespace {

double norm2(const ComplexMatrix& a) { return operator_norm_2(a); }

ComplexMatrix jordan(cplx alpha, int size) { return jordan_matrix(std::vector<JordanBlock>{{alpha, size}}); }

SpectrumData single(cplx alpha, int n) { return SpectrumData{{{alpha, n}}}; }

// Centers {i, -i}: p = z^2 + 1 simplifies a 2x2 Jordan block at 0, p(0) = 1.
VectorFunction jordan2_f(cplx f1, cplx f2) {
    return fixtures::on(make_context({1i, -1i}), {1.0}, {f1, f2});
}

}  // namespace

TEST(SpectrumData, ValidationAndMinimalPolynomial) {
    const SpectrumData s{{{1.0, 1}, {-1.0, 0}}};
    EXPECT_EQ(s.minimal_degree(), 3);
    EXPECT_EQ(s.minimal_polynomial(), Polynomial::from_roots(std::vector<cplx>{1.0, 1.0, -1.0}));
    EXPECT_NO_THROW(s.validate(3));
    EXPECT_THROW(s.validate(2), MalformedInput);
    EXPECT_THROW((SpectrumData{{{1.0, 0}, {1.0, 1}}}.validate()), MalformedInput);
    EXPECT_THROW((SpectrumData{{{1.0, -1}}}.validate()), MalformedInput);
    EXPECT_THROW(SpectrumData{}.validate(), MalformedInput);
}

TEST(SimplifyingPoly, Examples) {
    EXPECT_EQ(simplifying_poly(single(0.0, 2), 1.0), Polynomial({1.0, 0.0, 0.0, 1.0}));
    const cplx alpha{0.3, -0.2}, c{2.0, 1.0};
    EXPECT_EQ(simplifying_poly(single(alpha, 0), c), Polynomial({c, 1.0}));
    const Polynomial p = simplifying_poly(SpectrumData{{{1.0, 1}, {-1.0, 1}}}, 0.5);
    EXPECT_EQ(p, Polynomial({0.5, -3.0, 0.0, 1.0}));
    EXPECT_LE(multiset_distance(critical_points(p), std::vector<cplx>{1.0, -1.0}), 1e-12);
}

TEST(SimplifyingPolyProperty, DerivativesVanishToTheRequiredOrder) {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const SpectrumData s = spectrum_of_blocks(verify::random_blocks(rng, 8));
        const Polynomial p = simplifying_poly(s, rng.complex_normal());
        EXPECT_TRUE(p.is_monic(0.0));
        int degree = 1;
        for (const auto& e : s.entries) degree += e.n;
        EXPECT_EQ(p.degree(), degree);
        EXPECT_TRUE(is_simplifying(p, s));
    }
}

TEST(EnsureSimpleRoots, Examples) {
    const Polynomial cube = ensure_simple_roots(Polynomial({0.0, 0.0, 0.0, 1.0}), 1.0);
    EXPECT_EQ(cube, Polynomial({1.0, 0.0, 0.0, 1.0}));
    const auto r = roots(cube);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) EXPECT_NEAR(std::abs(r[i] - r[j]), std::sqrt(3.0), 1e-12);

    const Polynomial simple{-1.0, 0.0, 1.0};
    EXPECT_EQ(ensure_simple_roots(simple, 0.0), simple);

    const Polynomial shifted = ensure_simple_roots(Polynomial({0.0, 0.0, 1.0}), 0.0);
    EXPECT_NE(shifted.coeff(0), cplx(0.0));
    EXPECT_TRUE(has_simple_roots(shifted));
}

TEST(EnsureSimpleRoots, AvoidsEigenvaluesAndValidates) {
    const std::vector<cplx> avoid{0.0};
    const Polynomial p = ensure_simple_roots(Polynomial({0.0, 1.0}), 0.0, avoid);
    EXPECT_GT(std::abs(roots(p)[0]), 1e-8);
    EXPECT_THROW(ensure_simple_roots(Polynomial({0.0, 2.0}), 0.0), MalformedInput);
    EXPECT_THROW(ensure_simple_roots(Polynomial({1.0}), 0.0), MalformedInput);
}

TEST(EnsureSimpleRoots, ShiftSequenceIsDeterministic) {
    const Polynomial p{0.0, 0.0, 0.0, 1.0};
    EXPECT_EQ(ensure_simple_roots(p, 0.0), ensure_simple_roots(p, 0.0));
}

TEST(ChiA, TwoByTwoJordanClosedForm) {
    const cplx f1{0.7, -1.1}, f2{-0.4, 2.5};
    const auto f = jordan2_f(f1, f2);
    const ComplexMatrix a = jordan(0.0, 2);
    const ComplexMatrix want = ((f1 + f2) / 2.0) * ComplexMatrix::identity(2) + ((f1 - f2) / 2i) * a;
    const ComplexMatrix got = chi_A(a, single(0.0, 1), Polynomial({1.0, 0.0, 1.0}), f);
    EXPECT_LE((got - want).max_abs(), 1e-15);
}

TEST(ChiA, UnitMapsToIdentity) {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto inst = verify::random_calculus_instance(rng, verify::random_blocks(rng, 8), 10.0, 77 + t, 2, {});
        const auto x = chi_A(inst.matrix.a, inst.matrix.spectrum, VectorFunction::unit(inst.samples));
        EXPECT_LE(norm2(x - ComplexMatrix::identity(x.rows())), 1e-8 * inst.matrix.cond);
    }
}

TEST(ChiA, ThreeByThreeJordanIsToeplitzInTheTransform) {
    const auto ctx = AlgebraContext::from_polynomial(Polynomial({1.0, 0.0, 0.0, 1.0}));
    const std::vector<cplx> a{1.0, cplx(0.5, 0.5), -2.0};
    const auto f = VectorFunction::constant(make_samples(ctx, {1.0}), a);
    Polynomial phi;
    for (std::size_t j = 0; j < 3; ++j) phi = phi + ctx->delta()[j] * a[j];
    const ComplexMatrix x = chi_A(jordan(0.0, 3), single(0.0, 2), f);
    const cplx c0 = phi(0.0), c1 = phi.derivative()(0.0), c2 = phi.derivative(2)(0.0) / 2.0;
    ComplexMatrix want(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        want(i, i) = c0;
        if (i + 1 < 3) want(i, i + 1) = c1;
    }
    want(0, 2) = c2;
    EXPECT_LE((x - want).max_abs(), 1e-12);
}

TEST(ChiA, Errors) {
    const auto f = jordan2_f(1.0, 2.0);
    EXPECT_THROW(chi_A(jordan(1.0, 2), single(1.0, 1), f), NotSimplifying);
    const auto miss = fixtures::on(make_context({1i, -1i}), {2.0}, {1.0, 2.0});
    EXPECT_THROW(chi_A(jordan(0.0, 2), single(0.0, 1), miss), SampleMiss);
    EXPECT_THROW(chi_A(jordan(0.0, 2), single(0.0, 1), Polynomial({2.0, 0.0, 1.0}), f), ContextMismatch);
    EXPECT_THROW(AlgebraContext::from_polynomial(Polynomial({0.0, 0.0, 1.0})), CentersDegenerate);
    EXPECT_THROW(chi_A(jordan(0.0, 2), single(0.0, 2), f), MalformedInput);
    EXPECT_THROW(chi_A(ComplexMatrix(2, 3), single(0.0, 1), f), MalformedInput);
}

TEST(ChiPolynomial, AgreesWithFactoredEvaluation) {
    const auto ctx = AlgebraContext::from_polynomial(Polynomial({1.0, 0.0, 0.0, 1.0}));
    const auto f = VectorFunction::constant(make_samples(ctx, {1.0}), std::vector<cplx>{1.0, 2.0, 3.0});
    const SpectrumData s = single(0.0, 2);
    const ComplexMatrix a = jordan(0.0, 3);
    EXPECT_LE((mat_poly_eval(chi_polynomial(s, f), a) - chi_A(a, s, f)).max_abs(), 1e-12);
}

TEST(Hermite, SquareOnJordanBlock) {
    const cplx alpha{0.5, -1.5};
    const SpectrumData s = single(alpha, 2);
    const auto x = hermite_matrix_function(jordan(alpha, 3), s, {{alpha * alpha, 2.0 * alpha, 2.0}});
    const ComplexMatrix want(3, 3, {alpha * alpha, 2.0 * alpha, 1.0, 0.0, alpha * alpha, 2.0 * alpha, 0.0, 0.0, alpha * alpha});
    EXPECT_LE((x - want).max_abs(), 1e-14);
}

TEST(Hermite, DiagonalizableReducesToLagrange) {
    const std::vector<cplx> alphas{1.0, -2.0, 3i};
    SpectrumData s;
    std::vector<std::vector<cplx>> vals;
    for (const cplx& a : alphas) s.entries.push_back({a, 0}), vals.push_back({std::exp(a)});
    const auto x = hermite_matrix_function(ComplexMatrix::diagonal(alphas), s, vals);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_LE(std::abs(x(i, j) - (i == j ? std::exp(alphas[i]) : 0.0)), 1e-12);
}

TEST(Hermite, InsufficientData) {
    const SpectrumData s{{{0.0, 2}, {1.0, 0}}};
    const ComplexMatrix a = jordan_matrix(std::vector<JordanBlock>{{0.0, 3}, {1.0, 1}});
    EXPECT_THROW(hermite_matrix_function(a, s, {{1.0, 1.0, 1.0}}), InsufficientData);
    EXPECT_THROW(hermite_matrix_function(a, s, {{1.0, 1.0}, {1.0}}), InsufficientData);
    EXPECT_NO_THROW(hermite_matrix_function(a, s, {{1.0, 1.0, 1.0}, {1.0}}));
}

TEST(HermiteProperty, ExtendsTheClassicalCalculus) {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        const auto inst = verify::random_calculus_instance(rng, verify::random_blocks(rng, 8), 1.0 + t % 10, 500 + t, 1, {});
        const auto& ctx = *inst.ctx;
        const auto comps = verify::random_components(rng, ctx.d(), rng.integer(0, 3));
        const auto f = verify::sample_components(inst.samples, comps);
        const auto& s = inst.matrix.spectrum;
        const auto h = hermite_matrix_function(inst.matrix.a, s,
                                               verify::derivative_data(verify::transform_polynomial(ctx, comps), s));
        const auto x = chi_A(inst.matrix.a, s, f);
        EXPECT_LE(norm2(x - h), 1e-8 * inst.matrix.cond * unit_scale(norm2(h)));
    }
}

TEST(ChiAProperty, Homomorphism) {
    Rng rng(9);
    int checked = 0;
    for (int t = 0; t < 80; ++t) {
        const double cond = rng.uniform(1.0, 50.0);
        const auto inst = verify::random_calculus_instance(rng, verify::random_blocks(rng, 8), cond, 900 + t, 2, {});
        if (inst.ctx->d() > 5) continue;
        const auto f = verify::random_function(rng, inst.samples), g = verify::random_function(rng, inst.samples);
        const auto& a = inst.matrix.a;
        const auto& s = inst.matrix.spectrum;
        const auto xf = chi_A(a, s, f), xg = chi_A(a, s, g);
        const double scale = cond * unit_scale(norm2(xf) * norm2(xg));
        EXPECT_LE(norm2(chi_A(a, s, polyprod(f, g)) - xf * xg), 1e-8 * scale);
        ++checked;
    }
    EXPECT_GT(checked, 40);
}

TEST(ChiAProperty, ContinuityBoundForNormalImage) {
    // T unitary makes p(A) normal, where sum_j ||delta_j(A)|| max_j |f_j| bounds chi_A(f).
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const auto inst = verify::random_calculus_instance(rng, verify::random_blocks(rng, 8), 1.0, 1300 + t, 2, {});
        const auto f = verify::random_function(rng, inst.samples);
        double sum = 0.0;
        for (const auto& dj : inst.ctx->delta()) sum += norm2(mat_poly_eval(dj, inst.matrix.a));
        EXPECT_LE(norm2(chi_A(inst.matrix.a, inst.matrix.spectrum, f)), sum * sup_norm(f) + 1e-8);
    }
}

TEST(SpectralMapping, Examples) {
    const auto unit = VectorFunction::unit(jordan2_f(1.0, 1.0).samples_ptr());
    const auto r1 = spectral_mapping_check(jordan(0.0, 2), single(0.0, 1), unit);
    ASSERT_EQ(r1.matrix_set.size(), 1u);
    EXPECT_LE(std::abs(r1.matrix_set[0] - 1.0), 1e-12);
    EXPECT_LE(r1.hausdorff, 1e-12);

    const cplx f1{1.5, 0.5}, f2{-0.5, 2.0};
    const auto f = jordan2_f(f1, f2);
    const auto r2 = spectral_mapping_check(jordan(0.0, 2), single(0.0, 1), f);
    ASSERT_EQ(r2.matrix_set.size(), 1u);
    EXPECT_LE(std::abs(r2.matrix_set[0] - (f1 + f2) / 2.0), 1e-7);
    EXPECT_LE(std::abs(r2.quotient_set[0] - gelfand_eval(f, 0.0)), 1e-15);
    EXPECT_LE(r2.hausdorff, 1e-6);
}

TEST(SpectralMapping, ScalarMatrixSeesOnlyItsOwnFiberPoint) {
    const auto f = fixtures::on(fixtures::two_centers(), {3.0}, {cplx(1.0, 1.0), cplx(-2.0, 0.5)});
    const SpectrumData s = single(2.0, 0);
    const ComplexMatrix a = 2.0 * ComplexMatrix::identity(2);
    const cplx fhat2 = 1.5 * f(0, 0) - 0.5 * f(0, 1);
    EXPECT_LE((chi_A(a, s, f) - fhat2 * ComplexMatrix::identity(2)).max_abs(), 1e-14);
    const auto r = spectral_mapping_check(a, s, f);
    ASSERT_EQ(r.matrix_set.size(), 1u);
    EXPECT_LE(std::abs(r.matrix_set[0] - fhat2), 1e-14);
    EXPECT_EQ(r.full_set.size(), 2u);
    EXPECT_GT(hausdorff_distance(r.full_set, r.matrix_set), 0.1);
}

TEST(SpectralMappingProperty, RandomInstances) {
    Rng rng(13);
    for (int t = 0; t < 30; ++t) {
        const auto inst = verify::random_calculus_instance(rng, verify::random_blocks(rng, 8), 50.0, 1700 + t, 0, {});
        const auto f = verify::random_function(rng, inst.samples);
        EXPECT_LE(spectral_mapping_check(inst.matrix.a, inst.matrix.spectrum, f).hausdorff, 1e-6);
    }
}

TEST(ChiSimilarity, IdentityConjugationIsExact) {
    const auto f = jordan2_f(2.0, -1.0);
    const auto a = jordan(0.0, 2);
    const auto r = chi_similarity(a, ComplexMatrix::identity(2), single(0.0, 1), f);
    EXPECT_EQ(r.matrix, chi_A(a, single(0.0, 1), f));
    EXPECT_NEAR(r.cond, 1.0, 1e-12);
    EXPECT_THROW(chi_similarity(a, ComplexMatrix(2, 2), single(0.0, 1), f), SingularMatrix);
}

TEST(ChiSimilarity, RandomConjugationsOfThreeByThreeJordan) {
    Rng rng(15);
    const auto ctx = AlgebraContext::from_polynomial(Polynomial({1.0, 0.0, 0.0, 1.0}));
    const auto m = make_samples(ctx, {1.0});
    const SpectrumData s = single(0.0, 2);
    const ComplexMatrix j = jordan(0.0, 3);
    for (int t = 0; t < 30; ++t) {
        const double cond = rng.uniform(1.0, 50.0);
        const TestMatrix tm = build_test_matrix({{{0.0, 3}}, 2100u + static_cast<unsigned>(t), cond});
        const auto f = verify::random_function(rng, m), g = verify::random_function(rng, m);
        const auto direct = chi_A(tm.a, s, f);
        const auto conj = chi_similarity(tm.a, tm.t, s, f);
        EXPECT_LE(norm2(conj.matrix - direct), 1e-6 * conj.cond * unit_scale(norm2(direct)));
        EXPECT_NEAR(conj.cond, cond, 1e-6 * cond);
        const auto fg = chi_similarity(tm.a, tm.t, s, polyprod(f, g)).matrix;
        const auto prod = conj.matrix * chi_similarity(tm.a, tm.t, s, g).matrix;
        EXPECT_LE(norm2(fg - prod), 1e-8 * cond * unit_scale(norm2(prod)));
        EXPECT_LE(norm2(chi_A(j, s, f) - tm.t_inv * direct * tm.t), 1e-6 * cond * unit_scale(norm2(direct)));
    }
}

TEST(TestMatrixBuilder, ReproducesTheJordanStructure) {
    const TestMatrixSpec spec{{{1.0, 2}, {-1.0, 1}, {1.0, 1}}, 42u, 20.0};
    const TestMatrix tm = build_test_matrix(spec);
    EXPECT_EQ(tm.spectrum, (SpectrumData{{{1.0, 1}, {-1.0, 0}}}));
    EXPECT_LE(norm2(tm.t * tm.t_inv - ComplexMatrix::identity(4)), 1e-12);
    EXPECT_NEAR(norm2(tm.t) * norm2(tm.t_inv), 20.0, 1e-6);
    EXPECT_LE(norm2(tm.a - tm.t * tm.jordan * tm.t_inv), 1e-13);
    EXPECT_LE(norm2(mat_poly_eval(tm.spectrum.minimal_polynomial(), tm.a)), 1e-10);

    const TestMatrix plain = build_test_matrix({{{2.0, 2}}, std::nullopt, 1.0});
    EXPECT_EQ(plain.a, jordan(2.0, 2));
    EXPECT_THROW(build_test_matrix({{}, std::nullopt, 1.0}), MalformedInput);
    EXPECT_THROW(build_test_matrix({{{0.0, 1}}, 1u, 0.5}), MalformedInput);
    EXPECT_THROW(jordan_matrix(std::vector<JordanBlock>{{0.0, 0}}), MalformedInput);
}

TEST(VerifySuites, CalculusSuitesPassOnReducedRuns) {
    verify::Options o;
    o.trials = 10;
    for (const char* name : {"jordan", "specmap", "nondiff"})
        for (const auto& rep : verify::run(name, o))
            for (const auto& c : rep.checks) EXPECT_TRUE(c.pass()) << name << "/" << c.name << " = " << c.value;
}
