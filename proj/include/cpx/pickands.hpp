#pragma once

#include <cstdint>
#include <string>

#include "cpx/asymptotics.hpp"
#include "cpx/fbm.hpp"

namespace cpx {

// Estimator families for the limit constants.
//
//   HOfLambda  mean of sup_{[0,lambda]} exp(sqrt2 B(t) - |t|^alpha); estimates
//              the finite-horizon functional H(lambda) itself.
//   HRate      common-random-number increment (H(lambda) - H(lambda/2)) / (lambda/2);
//              cancels the O(1) term of H(lambda) = H*lambda + O(1) in expectation.
//   HShift     likelihood-ratio (random shift) form on the window [-lambda, lambda]:
//              E[ exp(max ksi) / (eta * sum exp(ksi)) ] with ksi = sqrt2 B - |t|^alpha.
//              The integrand is bounded by 1/eta, so the estimate concentrates;
//              this is the default. The sup-based forms above are exact
//              transcriptions of the defining expectations but their sample
//              means are driven by rare huge path values (see README).
//   POfLambda  2-D constant P_alpha^f(lambda, lambda1) via the pair supremum.
//   QOfLambda  one-sided variant Q_alpha(lambda, lambda1).
enum class ConstantKind { HOfLambda, HRate, HShift, POfLambda, QOfLambda };

std::string to_string(ConstantKind kind);

struct ConstantEstimate {
    ConstantKind kind = ConstantKind::HShift;
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n_replicates = 0;
    FbmGridSpec grid;         // grid the estimate was read off (alpha, lambda, step)
    double lambda1 = 0.0;     // P/Q only
    bool has_f = false;       // P only
    double b_over_a = 0.0;
    double c_over_sqrt_a = 0.0;
};

// Every estimator simulates once at step/2 and reads both grid levels off the
// same replicates (coarse = every second point), so refinement comparisons are
// common-random-number by construction.
struct RefinedEstimate {
    ConstantEstimate coarse;  // at `step`
    ConstantEstimate fine;    // at `step/2`
};

struct HOptions {
    double alpha = 1.0;
    double lambda = 8.0;
    double step = 0.01;
    std::int64_t n_rep = 100000;
    std::uint64_t seed = 0;
    int threads = 0;
    ConstantKind kind = ConstantKind::HShift;
};

RefinedEstimate estimate_H(const HOptions& opt);

struct PQOptions {
    double alpha = 1.0;
    double lambda = 4.0;
    double lambda1 = 2.0;
    double step = 0.01;
    std::int64_t n_rep = 10000;
    std::uint64_t seed = 0;
    int threads = 0;
    // P-only penalty f(s-t) = b_over_a |s-t|^alpha + c_over_sqrt_a (s-t) 1{alpha=2}
    double b_over_a = 0.0;
    double c_over_sqrt_a = 0.0;
};

RefinedEstimate estimate_P(const PQOptions& opt);
RefinedEstimate estimate_Q(const PQOptions& opt);

// ConstantProvider backed by the Monte Carlo estimators (H via the shift
// form). Estimates are cached per parameter tuple.
class MonteCarloConstantProvider final : public ConstantProvider {
public:
    explicit MonteCarloConstantProvider(std::uint64_t seed, std::int64_t n_rep = 100000,
                                        double lambda = 8.0, double step = 0.01,
                                        int threads = 0);
    double pickands_h(double alpha) const override;
    double piterbarg_p(double alpha, double b_over_a, double c_over_sqrt_a) const override;
    std::string source() const override { return "monte-carlo"; }

private:
    std::uint64_t seed_;
    std::int64_t n_rep_;
    double lambda_;
    double step_;
    int threads_;
};

}  // namespace cpx
