#include "cpx/stats.hpp"

#include <cmath>
#include <limits>

namespace cpx {

namespace {

struct ArgmaxTracker {
    double value;
    std::size_t i, j;

    void offer(double v, std::size_t ci, std::size_t cj) {
        if (v > value || (v == value && (ci < i || (ci == i && cj < j)))) {
            value = v;
            i = ci;
            j = cj;
        }
    }
};

// Per-lag sweep: for lag k the pair value is drift[j] - drift[j-k] - penalty(k).
// Within a lag the first j attaining the lag max has the smallest i, which the
// strict ">" preserves; lags then compete lexicographically.
template <typename Penalty>
StatReport scan_pairs(StatKind kind, const std::vector<double>& drift, std::size_t m,
                      const Penalty& penalty, double scale) {
    ArgmaxTracker best{-std::numeric_limits<double>::infinity(), 0, 1};
    for (std::size_t k = 1; k <= m; ++k) {
        double lag_max = drift[k] - drift[0];
        std::size_t lag_j = k;
        for (std::size_t j = k + 1; j <= m; ++j) {
            const double v = drift[j] - drift[j - k];
            if (v > lag_max) {
                lag_max = v;
                lag_j = j;
            }
        }
        best.offer(scale * (lag_max - penalty(k)), lag_j - k, lag_j);
    }
    return {kind, best.value, best.i, best.j};
}

std::vector<double> centered_sums(const std::vector<double>& sums, std::size_t m) {
    const double mean = sums[m] / static_cast<double>(m);
    std::vector<double> centered(sums.size());
    for (std::size_t i = 0; i <= m; ++i) {
        centered[i] = sums[i] - static_cast<double>(i) * mean;
    }
    return centered;
}

}  // namespace

std::vector<double> partial_sums(const ObservationSeries& x) {
    std::vector<double> sums(x.m() + 1);
    sums[0] = 0.0;
    for (std::size_t i = 0; i < x.m(); ++i) {
        sums[i + 1] = sums[i] + x.values()[i];
    }
    return sums;
}

StatReport z1(const ObservationSeries& x, const HypothesisParams& h) {
    const double mu0 = h.require_mu0();
    const double delta = h.require_delta();
    const std::size_t m = x.m();
    auto tilted = partial_sums(x);
    for (std::size_t i = 0; i <= m; ++i) {
        tilted[i] = delta * (tilted[i] - static_cast<double>(i) * (mu0 + 0.5 * delta));
    }
    return scan_pairs(StatKind::Z1, tilted, m, [](std::size_t) { return 0.0; }, 1.0);
}

StatReport z2(const ObservationSeries& x, const HypothesisParams& h) {
    const double delta = h.require_delta();
    const std::size_t m = x.m();
    const auto centered = centered_sums(partial_sums(x), m);
    return scan_pairs(
        StatKind::Z2, centered, m,
        [delta](std::size_t k) { return 0.5 * delta * static_cast<double>(k); }, delta);
}

StatReport z3(const ObservationSeries& x, const HypothesisParams& h) {
    const double delta = h.require_delta();
    const std::size_t m = x.m();
    const auto centered = centered_sums(partial_sums(x), m);
    const double dm = static_cast<double>(m);
    return scan_pairs(
        StatKind::Z3, centered, m,
        [delta, dm](std::size_t k) {
            const double dk = static_cast<double>(k);
            return 0.5 * delta * dk * (1.0 - dk / dm);
        },
        delta);
}

StatReport z4(const ObservationSeries& x) {
    const std::size_t m = x.m();
    const auto centered = centered_sums(partial_sums(x), m);
    const double dm = static_cast<double>(m);
    // Max is never negative (the numerator is clamped), and when it is 0 the
    // reported pair is (0,1) by convention; lag m is excluded (0/0 form).
    ArgmaxTracker best{0.0, 0, 1};
    for (std::size_t k = 1; k < m; ++k) {
        const double dk = static_cast<double>(k);
        const double denom = std::sqrt(dk * (1.0 - dk / dm));
        double lag_max = centered[k] - centered[0];
        std::size_t lag_j = k;
        for (std::size_t j = k + 1; j <= m; ++j) {
            const double v = centered[j] - centered[j - k];
            if (v > lag_max) {
                lag_max = v;
                lag_j = j;
            }
        }
        if (lag_max > 0.0) {
            best.offer(lag_max / denom, lag_j - k, lag_j);
        }
    }
    return {StatKind::Z4, best.value, best.i, best.j};
}

double stat_at_pair(StatKind kind, const ObservationSeries& x, const HypothesisParams& h,
                    std::size_t i, std::size_t j) {
    if (i >= j || j > x.m()) throw ParamError("stat_at_pair needs 0 <= i < j <= m");
    const auto sums = partial_sums(x);
    const std::size_t m = x.m();
    const double dm = static_cast<double>(m);
    const double k = static_cast<double>(j - i);
    const double mean = sums[m] / dm;
    switch (kind) {
        case StatKind::Z1: {
            const double mu0 = h.require_mu0();
            const double delta = h.require_delta();
            return delta * (sums[j] - static_cast<double>(j) * mu0 -
                            (sums[i] - static_cast<double>(i) * mu0) - 0.5 * k * delta);
        }
        case StatKind::Z2: {
            const double delta = h.require_delta();
            return delta * (sums[j] - static_cast<double>(j) * mean -
                            (sums[i] - static_cast<double>(i) * mean) - 0.5 * k * delta);
        }
        case StatKind::Z3: {
            const double delta = h.require_delta();
            return delta * (sums[j] - sums[i] - k * mean - 0.5 * delta * k * (1.0 - k / dm));
        }
        case StatKind::Z4: {
            if (j - i == m) return 0.0;
            const double num = std::max(sums[j] - sums[i] - k * mean, 0.0);
            return num / std::sqrt(k * (1.0 - k / dm));
        }
    }
    throw ParamError("unknown statistic kind");
}

}  // namespace cpx
