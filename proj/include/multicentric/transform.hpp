#pragma once

#include <functional>
#include <vector>

#include "element.hpp"

namespace mcalc {

/// Multicentric representation at z: sum_j delta_j(z) f_j(p(z)).
///
/// p(z) must match a sample of f's domain; there is no interpolation
/// between samples.
inline cplx gelfand_eval(const VectorFunction& f, cplx z) {
    const cplx w = f.ctx().p()(z);
    const auto idx = f.samples().find(w);
    if (!idx) throw SampleMiss("p(z) = " + to_string(w) + " is not a sample point");
    return f.hat(*idx, z);
}

/// A value of the scalar function at one fiber point.
struct PhiSample {
    cplx z;
    cplx phi;
};

/// Recovers f(w) from the values of phi on the fiber over w:
///
///   f_k(w) = sum_j delta_j(lambda_k; w) phi(z_j(w)),
///
/// where delta_j(.; w) is the Lagrange basis on the fiber points, i.e.
/// (p(zeta) - w) / (p'(z_j) (zeta - z_j)). Refuses critical values.
inline std::vector<cplx> inverse_transform(const AlgebraContext& ctx, std::span<const PhiSample> phi, cplx w) {
    const auto& tol = ctx.tol();
    const std::size_t d = static_cast<std::size_t>(ctx.d());
    if (phi.size() != d)
        throw MalformedInput("inverse_transform: expected " + std::to_string(d) + " fiber values, got " +
                             std::to_string(phi.size()));
    const double wscale = unit_scale(std::abs(w));
    for (std::size_t c = 0; c < ctx.critical().values.size(); ++c)
        if (std::abs(ctx.critical().values[c] - w) <= tol.crit_tol * wscale)
            throw CriticalValue("w = " + to_string(w) + " is a critical value");

    std::vector<cplx> nodes(d);
    for (std::size_t j = 0; j < d; ++j) {
        const cplx z = phi[j].z;
        if (!is_finite(z) || !is_finite(phi[j].phi)) throw MalformedInput("inverse_transform: non-finite sample");
        const double res = std::abs(ctx.p()(z) - w);
        if (res > tol.root_tol * std::max(wscale, ctx.p().eval_scale(z)))
            throw MalformedInput("inverse_transform: point " + std::to_string(j) + " is not in the fiber over w");
        if (std::abs(ctx.dp()(z)) <= tol.crit_tol)
            throw CriticalValue("fiber point " + to_string(z) + " is critical");
        nodes[j] = z;
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(nodes[i] - nodes[j]) <= tol.crit_tol)
                throw MalformedInput("inverse_transform: fiber point supplied twice");

    std::vector<cplx> f(d, cplx{0.0});
    const auto lam = ctx.centers().lambdas();
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j) f[k] += lagrange_basis_value(nodes, j, lam[k]) * phi[j].phi;
    return f;
}

/// Same, computing the fiber over w and sampling phi there.
inline std::vector<cplx> inverse_transform(const AlgebraContext& ctx, const std::function<cplx(cplx)>& phi, cplx w) {
    const Fiber fib = ctx.fiber(w);
    if (fib.critical) throw CriticalValue("w = " + to_string(w) + " is a critical value");
    std::vector<PhiSample> s;
    for (const cplx& z : fib.points) s.push_back({z, phi(z)});
    return inverse_transform(ctx, s, w);
}

}  // namespace mcalc
