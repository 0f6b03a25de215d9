#pragma once

#include <vector>

#include "multicentric.hpp"

namespace fixtures {

using mcalc::cplx;

// Centers {1, -1}: p(z) = z^2 - 1, critical point 0, critical value -1.
inline mcalc::ContextPtr two_centers() { return mcalc::make_context({1.0, -1.0}); }

inline mcalc::VectorFunction on(const mcalc::ContextPtr& ctx, std::vector<cplx> ws, std::vector<cplx> values) {
    return {mcalc::make_samples(ctx, std::move(ws)), std::move(values)};
}

// f(3) = (2, 0) on M = {3}: f-hat(2) = 3, f-hat(-2) = -1.
inline mcalc::VectorFunction worked_f() { return on(two_centers(), {3.0}, {2.0, 0.0}); }

inline mcalc::VectorFunction like(const mcalc::VectorFunction& f, std::vector<cplx> values) {
    return {f.samples_ptr(), std::move(values)};
}

// Random element on d random centers and n random sample points.
inline mcalc::VectorFunction random_element(mcalc::Rng& rng, int d, int n) {
    auto ctx = mcalc::make_context(mcalc::verify::random_centers(rng, d));
    auto m = mcalc::make_samples(ctx, mcalc::verify::random_points(rng, n, 2.0));
    return mcalc::verify::random_function(rng, m);
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace fixtures
