#include "cpx/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpx/normal.hpp"

namespace cpx {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833411;

TailApprox finish(double log_constant, double constant, double exponent_power, double u,
                  std::string source = {}) {
    TailApprox out;
    out.constant = constant;
    out.exponent_power = exponent_power;
    out.constant_source = std::move(source);
    out.log_value = log_constant + exponent_power * std::log(u) + log_norm_survival(u);
    out.value = std::exp(out.log_value);
    out.pre_asymptotic = out.value > 1.0;
    return out;
}

// value = pref * u^2 * exp(exponent); carried in log form first.
TailApprox quadratic_prefactor_tail(double pref, double u, double exponent) {
    TailApprox out;
    out.constant = pref;
    out.exponent_power = 2.0;
    out.log_value = std::log(pref) + 2.0 * std::log(u) + exponent;
    out.value = std::exp(out.log_value);
    out.pre_asymptotic = out.value > 1.0;
    return out;
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw ParamError(std::string(name) + " must be positive");
    }
}

}  // namespace

void AsymptoticParams::validate() const {
    if (!(s2 >= s1)) throw ParamError("requires s2 >= s1");
    require_positive(a, "a");
    require_positive(b, "b");
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ParamError("requires alpha in (0, 2]");
    if (!(beta > 0.0 && beta <= 2.0)) throw ParamError("requires beta in (0, 2]");
    if (!std::isfinite(c)) throw ParamError("trend coefficient c must be finite");
}

double BuiltinConstantTable::pickands_h(double alpha) const {
    if (alpha == 1.0) return 1.0;
    if (alpha == 2.0) return 1.0 / kSqrtPi;
    throw ParamError("no built-in H_alpha for alpha = " + std::to_string(alpha) +
                     "; use the Monte Carlo provider");
}

double BuiltinConstantTable::piterbarg_p(double alpha, double, double) const {
    throw ParamError("no built-in P_alpha^f for alpha = " + std::to_string(alpha) +
                     "; use the Monte Carlo provider");
}

TailApprox theorem1_tail(const AsymptoticParams& p, double u, const ConstantProvider& constants) {
    p.validate();
    require_positive(u, "u");
    const double exponent_power =
        2.0 / p.alpha + std::max(2.0 / p.alpha - 2.0 / p.beta, 0.0);
    if (p.s1 == p.s2) {
        TailApprox out;
        out.exponent_power = exponent_power;
        out.log_value = -std::numeric_limits<double>::infinity();
        out.constant_source = constants.source();
        return out;
    }

    const double length = p.s2 - p.s1;
    double constant = 0.0;
    if (p.alpha < p.beta) {
        const double h = constants.pickands_h(p.alpha);
        constant = 2.0 * length * std::pow(p.a, 2.0 / p.alpha) * h * h *
                   std::pow(p.b, -1.0 / p.beta) * std::tgamma(1.0 / p.beta + 1.0);
        if (p.beta == 2.0 && p.trend == TrendKind::Linear) {
            constant *= std::exp(p.c * p.c / (4.0 * p.b));
        }
    } else if (p.alpha == p.beta) {
        const double c_lin = (p.alpha == 2.0 && p.trend == TrendKind::Linear)
                                 ? p.c / std::sqrt(p.a)
                                 : 0.0;
        constant = length * std::pow(p.a, 1.0 / p.alpha) *
                   constants.piterbarg_p(p.alpha, p.b / p.a, c_lin);
    } else {
        // alpha > beta. The sum-of-the-proof form: 2^{1/alpha} a^{1/alpha} H_alpha,
        // without any residual power of u inside the constant.
        constant = std::pow(2.0, 1.0 / p.alpha) * length * std::pow(p.a, 1.0 / p.alpha) *
                   constants.pickands_h(p.alpha);
    }
    return finish(std::log(constant), constant, exponent_power, u, constants.source());
}

TailApprox p1_fixed(const ContinuousProblemParams& q) {
    if (!(q.d > 0.0)) throw ParamError("p1 requires c > d > 0: d is not positive");
    if (!(q.c > q.d)) throw ParamError("p1 requires c > d > 0: c > d violated");
    require_positive(q.u, "u");
    const double pref = 2.0 * q.c * (q.c - q.d);
    return quadratic_prefactor_tail(pref, q.u, -2.0 * q.c * q.d * q.u * q.u);
}

TailApprox p2_fixed(const ContinuousProblemParams& q) {
    if (!(q.c > 0.0)) throw ParamError("p2 requires c > 0");
    if (!(q.d > 0.0)) throw ParamError("p2 requires d > 0");
    require_positive(q.u, "u");
    const double ratio = (q.d + q.c) / (2.0 * q.d + q.c);
    const double pref = 32.0 * q.d * q.d * ratio * ratio * ratio;
    return quadratic_prefactor_tail(pref, q.u, -2.0 * q.d * (q.c + q.d) * q.u * q.u);
}

TailApprox p3_fixed(const ContinuousProblemParams& q) {
    if (!(q.d > 0.0)) throw ParamError("p3 requires c > 4d > 0: d is not positive");
    if (!(q.c > 4.0 * q.d)) {
        throw ParamError("p3 requires c > 4d > 0: the two critical lag lines merge at c = 4d");
    }
    require_positive(q.u, "u");
    const double pref = 32.0 * q.c * q.d / std::sqrt(q.c * (q.c - 4.0 * q.d));
    return quadratic_prefactor_tail(pref, q.u, -2.0 * q.c * q.d * q.u * q.u);
}

TailApprox p4_tail(double d) {
    if (!(d > 0.0)) throw ParamError("p4 requires d > 0");
    TailApprox out;
    out.constant = 2.0;
    out.exponent_power = 4.0;
    out.log_value = std::log(2.0) + 4.0 * std::log(d) + log_norm_survival(d);
    out.value = std::exp(out.log_value);
    out.pre_asymptotic = out.value > 1.0;
    return out;
}

TailApprox p2_free_delta(double c, double u) {
    require_positive(u, "u");
    return quadratic_prefactor_tail(4.0, u, -2.0 * u * u - 2.0 * c * u);
}

TailApprox p3_free_delta(double c, double u) {
    require_positive(u, "u");
    const double shifted = 2.0 * u + 0.5 * c;
    return quadratic_prefactor_tail(4.0, u, -0.5 * shifted * shifted);
}

ContinuousProblemParams discrete_to_continuous(std::size_t m, double delta, double level,
                                               StatKind kind) {
    if (m < 2) throw ParamError("discrete_to_continuous needs m >= 2");
    require_positive(delta, "delta");
    if (kind == StatKind::Z4) {
        throw ParamError("z4 maps directly through p4_tail, not through the (c,d,u) transform");
    }
    ContinuousProblemParams q;
    q.u = std::sqrt(static_cast<double>(m));
    q.c = 0.5 * delta;
    q.d = level / (delta * static_cast<double>(m));
    return q;
}

}  // namespace cpx
