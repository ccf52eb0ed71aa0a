#include "cpx/normal.hpp"

#include <cmath>

namespace cpx {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;
}  // namespace

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x - kLogSqrt2Pi);
}

double norm_survival(double x) {
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double log_norm_survival(double x) {
    if (x <= 8.0) {
        return std::log(norm_survival(x));
    }
    // Mills ratio M(x) = Psi(x)/phi(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))),
    // evaluated bottom-up; 64 levels is far past convergence for x > 8.
    double cf = 0.0;
    for (int k = 64; k >= 1; --k) {
        cf = static_cast<double>(k) / (x + cf);
    }
    const double mills = 1.0 / (x + cf);
    return -0.5 * x * x - kLogSqrt2Pi + std::log(mills);
}

}  // namespace cpx
