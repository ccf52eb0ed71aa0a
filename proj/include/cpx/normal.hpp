#pragma once

namespace cpx {

// Standard normal density.
double norm_pdf(double x);

// Survival function Psi(x) = P{N(0,1) > x}, evaluated through erfc.
double norm_survival(double x);

// log Psi(x), stable for large x (log-domain Mills continued fraction
// beyond x = 8, direct logarithm below).
double log_norm_survival(double x);

// CDF, provided for completeness.
double norm_cdf(double x);

}  // namespace cpx
