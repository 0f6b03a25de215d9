#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace mcalc;
using fixtures::max_abs_diff;

TEST(GelfandEval, UnitIsOneEverywhere) {
    const auto ctx = fixtures::two_centers();
    for (const cplx z : {cplx(2.0), cplx(0.3, 0.7), cplx(-1.5, 2.0)}) {
        const auto m = make_samples(ctx, {ctx->p()(z)});
        EXPECT_LE(std::abs(gelfand_eval(VectorFunction::unit(m), z) - 1.0), 1e-15);
    }
}

TEST(GelfandEval, WorkedElement) {
    const auto f = fixtures::worked_f();
    EXPECT_LE(std::abs(gelfand_eval(f, 2.0) - 3.0), 1e-15);
    EXPECT_LE(std::abs(gelfand_eval(f, -2.0) + 1.0), 1e-15);
}

TEST(GelfandEval, MissingSampleIsReported) {
    EXPECT_THROW(gelfand_eval(fixtures::worked_f(), 1.0), SampleMiss);
}

TEST(GelfandEval, LinearInTheElement) {
    Rng rng(3);
    const auto f = fixtures::random_element(rng, 3, 5);
    const auto g = verify::random_function(rng, f.samples_ptr());
    const cplx a{0.3, -1.2};
    for (std::size_t s = 0; s < f.size(); ++s)
        for (const cplx& z : f.samples().fiber(s).points) {
            const cplx lhs = gelfand_eval(a * f + g, z);
            EXPECT_LE(std::abs(lhs - (a * gelfand_eval(f, z) + gelfand_eval(g, z))), 1e-12);
        }
}

TEST(InverseTransform, WorkedElement) {
    const auto ctx = fixtures::two_centers();
    const std::vector<PhiSample> phi{{2.0, 3.0}, {-2.0, -1.0}};
    const auto f = inverse_transform(*ctx, phi, 3.0);
    EXPECT_LE(std::abs(f[0] - 2.0), 1e-15);
    EXPECT_LE(std::abs(f[1]), 1e-15);
}

TEST(InverseTransform, FiberWeightsAtThree) {
    // With phi an indicator of one fiber point, the result is that point's weights.
    const auto ctx = fixtures::two_centers();
    const auto first = inverse_transform(*ctx, std::vector<PhiSample>{{2.0, 1.0}, {-2.0, 0.0}}, 3.0);
    const auto second = inverse_transform(*ctx, std::vector<PhiSample>{{2.0, 0.0}, {-2.0, 1.0}}, 3.0);
    EXPECT_LE(std::abs(first[0] - 0.75), 1e-15);
    EXPECT_LE(std::abs(first[1] - 0.25), 1e-15);
    EXPECT_LE(std::abs(second[0] - 0.25), 1e-15);
    EXPECT_LE(std::abs(second[1] - 0.75), 1e-15);
}

TEST(InverseTransform, ConstantsAreFixed) {
    Rng rng(9);
    const auto ctx = make_context(verify::random_centers(rng, 4));
    const cplx c{1.5, -0.5};
    const auto f = inverse_transform(*ctx, [c](cplx) { return c; }, cplx(0.7, 0.2));
    for (const cplx& x : f) EXPECT_LE(std::abs(x - c), 1e-12);
}

TEST(InverseTransform, RoundTripOfWorkedElement) {
    const auto f = fixtures::worked_f();
    const auto back = inverse_transform(f.ctx(), [&](cplx z) { return gelfand_eval(f, z); }, 3.0);
    EXPECT_LE(max_abs_diff(back, f.at(0)), 1e-14);
}

TEST(InverseTransform, RejectsCriticalValuesAndBadInput) {
    const auto ctx = fixtures::two_centers();
    EXPECT_THROW(inverse_transform(*ctx, std::vector<PhiSample>{{0.0, 1.0}, {0.0, 1.0}}, -1.0), CriticalValue);
    EXPECT_THROW(inverse_transform(*ctx, [](cplx) { return cplx{1.0}; }, -1.0), CriticalValue);
    EXPECT_THROW(inverse_transform(*ctx, std::vector<PhiSample>{{2.0, 1.0}}, 3.0), MalformedInput);
    EXPECT_THROW(inverse_transform(*ctx, std::vector<PhiSample>{{2.0, 1.0}, {1.0, 1.0}}, 3.0), MalformedInput);
    EXPECT_THROW(inverse_transform(*ctx, std::vector<PhiSample>{{2.0, 1.0}, {2.0, 1.0}}, 3.0), MalformedInput);
}

TEST(InverseTransformProperty, RoundTripFromElement) {
    Rng rng(17);
    for (int t = 0; t < 60; ++t) {
        const int d = 1 + t % 6;
        const auto f = fixtures::random_element(rng, d, 4);
        for (std::size_t s = 0; s < f.size(); ++s) {
            if (f.samples().fiber(s).critical) continue;
            std::vector<PhiSample> phi;
            for (const cplx& z : f.samples().fiber(s).points) phi.push_back({z, f.hat(s, z)});
            const auto back = inverse_transform(f.ctx(), phi, f.samples().point(s));
            double scale = 1.0;
            for (const cplx& x : f.at(s)) scale = std::max(scale, std::abs(x));
            EXPECT_LE(max_abs_diff(back, f.at(s)), 1e-8 * scale) << "d=" << d;
        }
    }
}

TEST(InverseTransformProperty, TransformReproducesPhi) {
    Rng rng(19);
    for (int t = 0; t < 60; ++t) {
        const auto ctx = make_context(verify::random_centers(rng, 1 + t % 6));
        const cplx w = rng.in_disc(2.0);
        const Fiber fib = ctx->fiber(w);
        if (fib.critical) continue;
        std::vector<PhiSample> phi;
        for (const cplx& z : fib.points) phi.push_back({z, rng.complex_normal()});
        const VectorFunction f(make_samples(ctx, {w}), inverse_transform(*ctx, phi, w));
        for (const auto& s : phi) EXPECT_LE(std::abs(gelfand_eval(f, s.z) - s.phi), 1e-8);
    }
}

TEST(InverseTransformProperty, IndependentOfFiberOrder) {
    Rng rng(23);
    for (int t = 0; t < 60; ++t) {
        const auto ctx = make_context(verify::random_centers(rng, 2 + t % 5));
        const cplx w = rng.in_disc(2.0);
        const Fiber fib = ctx->fiber(w);
        std::vector<PhiSample> phi;
        for (const cplx& z : fib.points) phi.push_back({z, rng.complex_normal()});
        const auto a = inverse_transform(*ctx, phi, w);
        std::shuffle(phi.begin(), phi.end(), rng.engine());
        EXPECT_LE(max_abs_diff(a, inverse_transform(*ctx, phi, w)), 1e-10);
    }
}

TEST(InverseTransformProperty, NormGrowsNearTheCriticalPoint) {
    // Coarser grid than the acceptance run; the exponent is already stable.
    const auto res = verify::blowup_experiment(0.5, 16, 32);
    ASSERT_EQ(res.eps.size(), 8u);
    EXPECT_NEAR(res.slope, -0.5, 0.15);
    for (std::size_t i = 1; i < res.norms.size(); ++i) EXPECT_GT(res.norms[i], res.norms[i - 1]);
}
