#pragma once

#include <memory>
#include <string>

#include "cpx/errors.hpp"
#include "cpx/series.hpp"

namespace cpx {

enum class TrendKind { Linear, Quadratic };

// Parameter tuple of the two-dimensional tail theorem: interval [s1, s2] along
// the diagonal, correlation scale a, variance-decay scale b, local exponents
// alpha (correlation) and beta (variance), trend coefficient c.
struct AsymptoticParams {
    double s1 = 0.0;
    double s2 = 1.0;
    double a = 1.0;
    double b = 1.0;
    double alpha = 1.0;
    double beta = 2.0;
    double c = 0.0;
    TrendKind trend = TrendKind::Linear;

    void validate() const;
};

// Continuous-problem triple: trend coefficient c, threshold coefficient d,
// scale u (u = sqrt(n) in the n = m scenario).
struct ContinuousProblemParams {
    double c = 0.0;
    double d = 1.0;
    double u = 1.0;
};

// An asymptotic tail approximation constant * u^power * Psi(u). The value is
// an asymptotic equivalent, not a probability; values above 1 are reported
// with the pre_asymptotic flag instead of being clamped.
struct TailApprox {
    double value = 0.0;
    double log_value = 0.0;
    double constant = 0.0;
    double exponent_power = 0.0;
    bool pre_asymptotic = false;
    std::string constant_source;
};

// Source of the limit constants H_alpha and P_alpha^f. The built-in table
// knows the closed forms H_1 = 1 and H_2 = 1/sqrt(pi); the Monte Carlo
// provider in the pickands module covers the rest.
class ConstantProvider {
public:
    virtual ~ConstantProvider() = default;
    virtual double pickands_h(double alpha) const = 0;
    virtual double piterbarg_p(double alpha, double b_over_a, double c_over_sqrt_a) const = 0;
    virtual std::string source() const = 0;
};

class BuiltinConstantTable final : public ConstantProvider {
public:
    double pickands_h(double alpha) const override;
    double piterbarg_p(double alpha, double b_over_a, double c_over_sqrt_a) const override;
    std::string source() const override { return "builtin"; }
};

// Tail of sup over the diagonal band of X(s,t) - c(s-t) (Linear trend) or
// X(s,t) - c(s-t)^2 (Quadratic): constant * u^{2/alpha + (2/alpha-2/beta)_+} * Psi(u).
TailApprox theorem1_tail(const AsymptoticParams& p, double u, const ConstantProvider& constants);

// Closed-form p-value approximations for the change-point limit problems,
// n = m scenario. Domain constraints are enforced by name.
TailApprox p1_fixed(const ContinuousProblemParams& q);   // c > d > 0: 2c(c-d) u^2 e^{-2cdu^2}
TailApprox p2_fixed(const ContinuousProblemParams& q);   // c,d > 0:   32 d^2(d+c)^3/(2d+c)^3 u^2 e^{-2d(c+d)u^2}
TailApprox p3_fixed(const ContinuousProblemParams& q);   // c > 4d > 0: 32cd/sqrt(c(c-4d)) u^2 e^{-2cdu^2}
TailApprox p4_tail(double d);                            // d > 0:     2 d^4 Psi(d)
TailApprox p2_free_delta(double c, double u);            // 4 u^2 e^{-2u^2 - 2cu}
TailApprox p3_free_delta(double c, double u);            // 4 u^2 e^{-(2u + c/2)^2 / 2}

// Discrete -> continuous mapping for P{Z_kind > level} with n = m:
// u = sqrt(m), c = delta/2, d = level/(delta m).
ContinuousProblemParams discrete_to_continuous(std::size_t m, double delta, double level,
                                               StatKind kind);

}  // namespace cpx
