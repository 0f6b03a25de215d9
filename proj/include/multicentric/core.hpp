#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace mcalc {

using cplx = std::complex<double>;

inline constexpr double machine_eps = std::numeric_limits<double>::epsilon();

/// Tolerances shared by every numerical routine.
///
/// All comparisons are made relative to a scale of max(1, operand magnitudes),
/// so the values below are dimensionless.
struct ToleranceConfig {
    double eq_tol = 1e-10;    ///< relative equality / pivot threshold
    double crit_tol = 1e-8;   ///< closeness to a critical point or value
    double root_tol = 1e-10;  ///< polynomial root residual bound

    /// Largest matrix dimension accepted by eigenvalues().
    int eigen_dim_cap = 16;

    void validate() const;
};

// --- error hierarchy -------------------------------------------------------
//
// validation_error: the caller handed us something outside the contract
// (command line exit code 2). numerical_error: the inputs were fine but the
// computation could not deliver (exit code 1).

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class validation_error : public error {
public:
    using error::error;
};

class numerical_error : public error {
public:
    using error::error;
};

#define MCALC_DEFINE_ERROR(name, base)                                     \
    class name : public base {                                             \
    public:                                                                \
        explicit name(const std::string& what) : base(#name ": " + what) {} \
    }

MCALC_DEFINE_ERROR(MalformedInput, validation_error);
MCALC_DEFINE_ERROR(DimensionTooLarge, validation_error);
MCALC_DEFINE_ERROR(ContextMismatch, validation_error);
MCALC_DEFINE_ERROR(SampleMiss, validation_error);
MCALC_DEFINE_ERROR(NotSimplifying, validation_error);
MCALC_DEFINE_ERROR(InsufficientData, validation_error);

MCALC_DEFINE_ERROR(SingularMatrix, numerical_error);
MCALC_DEFINE_ERROR(ConvergenceFailure, numerical_error);
MCALC_DEFINE_ERROR(CriticalValue, numerical_error);
MCALC_DEFINE_ERROR(NotInvertible, numerical_error);
MCALC_DEFINE_ERROR(Overflow, numerical_error);
MCALC_DEFINE_ERROR(CentersDegenerate, numerical_error);
MCALC_DEFINE_ERROR(NoSimpleShiftFound, numerical_error);

#undef MCALC_DEFINE_ERROR

inline void ToleranceConfig::validate() const {
    if (!(eq_tol > 0) || !(crit_tol > 0) || !(root_tol > 0))
        throw MalformedInput("tolerances must be strictly positive");
    if (eigen_dim_cap < 1)
        throw MalformedInput("eigen_dim_cap must be positive");
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// max(1, |a|, |b|, ...)
template <typename... Ts>
double unit_scale(Ts... mags) {
    return std::max({1.0, static_cast<double>(mags)...});
}

inline std::string to_string(cplx z) {
    return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i)";
}

}  // namespace mcalc
