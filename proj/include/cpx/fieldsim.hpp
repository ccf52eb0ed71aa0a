#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpx/asymptotics.hpp"
#include "cpx/errors.hpp"

namespace cpx {

// The simulated functionals over the pair set {(s,t): 0 <= s < t <= 1} on a
// uniform m-point grid, with Y(s,t) = B(t) - B(s) - (t-s)B(1):
//
//   P1{c,d}:  sup (B(t)-B(s)) - c(t-s)u        exceeds d*u
//   P2{c,d}:  sup Y(s,t) - c(t-s)u             exceeds d*u
//   P3{c,d}:  sup Y(s,t) - c(t-s)(1-(t-s))u    exceeds d*u
//   P4:       sup Y(s,t)/sqrt((t-s)(1-(t-s)))  exceeds d
//   Free2{c}: sup Y(s,t) - c(t-s)              exceeds u
//   Free3{c}: sup Y(s,t) - c(t-s)(1-(t-s))     exceeds u
struct FieldKind {
    enum class Tag { P1, P2, P3, P4, Free2, Free3 };
    Tag tag = Tag::Free2;
    double c = 0.0;
    double d = 0.0;

    void validate() const;
    bool scaled_trend() const {
        return tag == Tag::P1 || tag == Tag::P2 || tag == Tag::P3;
    }
    std::string name() const;
};

struct TailEstimate {
    double p_hat = 0.0;
    double ci_low = 0.0;   // 95% Wilson score interval
    double ci_high = 0.0;
    std::int64_t n_rep = 0;
    std::int64_t grid_m = 0;
    double threshold = 0.0;
};

struct SimOptions {
    std::int64_t grid_m = 2000;
    std::int64_t n_rep = 10000;
    std::uint64_t seed = 0;
    int threads = 0;
};

// Empirical exceedance frequency of the kind's functional at the threshold
// implied by (kind, u_or_d): the scale u for P1-P3, the level itself for P4
// and the Free kinds.
TailEstimate simulate_sup(const FieldKind& kind, double u_or_d, const SimOptions& opt);

// Multi-threshold study sharing one path scan per replicate, with the
// analytic approximation alongside. Rows also carry the 2m-grid frequency so
// residual discretization bias is visible.
struct StudyRow {
    double threshold = 0.0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double p_hat_fine = 0.0;  // same replicates, grid 2m
    double analytic = 0.0;
    double ratio = 0.0;       // p_hat / analytic
};

std::vector<StudyRow> convergence_study(const FieldKind& kind, const std::vector<double>& thresholds,
                                        const SimOptions& opt);

// Half-Kuiper series: (1/2) sum_{k>=1} 2 (4 k^2 u^2 - 1) e^{-2 k^2 u^2}, the
// leading-order oracle for the Free2 functional at c = 0.
double kuiper_half_tail(double u, int terms = 8);

// Wilson score interval for k successes out of n at the given normal quantile.
std::pair<double, double> wilson_interval(std::int64_t k, std::int64_t n, double z = 1.959963984540054);

}  // namespace cpx
