// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Thresholds are fixed here, independently of those the suites carry.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "multicentric/verify.hpp"

using namespace mcalc;

namespace {

struct Requirement {
    std::string check;
    double threshold;
};

struct Criterion {
    int id;
    std::string title;
    std::string suite;
    std::vector<Requirement> required;
    double time_limit_s = 0.0;  // 0: untimed
};

struct Outcome {
    bool pass = true;
    std::string detail;
};

void require(Outcome& o, const verify::Report& r, const Requirement& q) {
    for (const auto& c : r.checks)
        if (c.name == q.check) {
            const bool ok = c.value <= q.threshold;  // NaN fails
            o.pass = o.pass && ok;
            char buf[160];
            std::snprintf(buf, sizeof buf, " %s=%.3g%s%.3g", q.check.c_str(), c.value, ok ? "<=" : ">", q.threshold);
            o.detail += buf;
            return;
        }
    o.pass = false;
    o.detail += " missing:" + q.check;
}

Outcome evaluate(const Criterion& c, const verify::Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const auto reports = verify::run(c.suite, opt);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Outcome o;
    for (const auto& q : c.required) require(o, reports.front(), q);
    char buf[64];
    std::snprintf(buf, sizeof buf, " time=%.2fs", elapsed);
    o.detail += buf;
    if (c.time_limit_s > 0.0 && elapsed >= c.time_limit_s) {
        o.pass = false;
        std::snprintf(buf, sizeof buf, ">=%.0fs", c.time_limit_s);
        o.detail += buf;
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Gelfand homomorphism, 200 pairs, d in 2..5, |M| = 50", "homomorphism", {{"gelfand_homomorphism", 1e-10}}, 10.0},
        {2, "d = 2 closed forms for product and inverse", "closed-forms",
         {{"product_w_over_4_formula", 1e-12}, {"inverse_closed_form", 1e-12}}},
        {3, "nilpotent example", "nilpotent", {{"mult_matrix_exact", 0.0}, {"square_vanishes", 1e-14}}},
        {4, "eigenvalues of B_f(w) are the transform values", "eigen", {{"eigenvalues_equal_transform_values", 1e-8}}},
        {5, "character equations and the standard basis at w0 = 0", "characters",
         {{"character_equations", 1e-10}, {"standard_basis_at_w0_zero", 0.0}}},
        {6, "spectral radius formula at k = 10 and exact radical zero", "spectral-radius",
         {{"gelfand_formula_rel_error_k10", 0.05}, {"radical_sequence_exact_zero", 0.0}}},
        {7, "d = 2 inverse constant and resolvent lower bound", "inversion",
         {{"d2_inverse_constant_minus_1", 1e-8}, {"resolvent_lower_bound_excess", 1e-10}}},
        {8, "Jordan block calculus against Hermite, homomorphism under similarity", "jordan",
         {{"hermite_oracle_J3", 1e-8}, {"homomorphism_over_cond", 1e-8}}},
        {9, "spectral mapping including A = 2I", "specmap",
         {{"random_instances_hausdorff", 1e-6}, {"twoI_hausdorff", 1e-6}, {"twoI_full_set_strictly_larger", 0.0}}},
        {10, "norm blow-up exponent near a critical point", "blowup", {{"slope_minus_expected", 0.15}}, 30.0},
        {11, "non-differentiable components at a critical value", "nondiff",
         {{"chi_defined_failures", 0.0}, {"homomorphism_over_cond", 1e-8}}},
    };

    const verify::Options opt;  // default seed and the criterion sizes
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = evaluate(c, opt);
        } catch (const std::exception& e) {
            o = {false, std::string(" exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %2d %s  %s |%s\n", c.id, o.pass ? "PASS" : "FAIL", c.title.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
