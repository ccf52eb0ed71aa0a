#include "cpx/fieldsim.hpp"

#include <cmath>
#include <limits>

#include "cpx/parallel.hpp"
#include "cpx/rng.hpp"

namespace cpx {

namespace {

struct PathWorkspace {
    std::vector<double> path;   // B on the fine grid (prefix sums of increments)
    std::vector<double> field;  // B or bridge on the active sub-grid
    std::vector<double> lags;   // per-lag increment maxima
};

// Draws B on {k/m} as running sums of iid N(0, 1/m) increments.
void draw_brownian(GaussianStream& gauss, std::size_t m, std::vector<double>& path) {
    path.resize(m + 1);
    path[0] = 0.0;
    const double sd = std::sqrt(1.0 / static_cast<double>(m));
    for (std::size_t k = 1; k <= m; ++k) {
        path[k] = path[k - 1] + sd * gauss.next();
    }
}

// Per-lag maxima on the stride-subsampled path: lags[k-1] = max_j (A[j]-A[j-k])
// over the m = m_fine/stride sub-grid, with A = B (P1) or the bridge-centered
// path (all other kinds). The O(m^2) work is organized per lag so every pass
// is a streaming max over contiguous memory.
void build_lag_maxima(const FieldKind& kind, const std::vector<double>& path, std::size_t m_fine,
                      std::size_t stride, PathWorkspace& ws) {
    const std::size_t m = m_fine / stride;
    const double dm = static_cast<double>(m);
    ws.field.resize(m + 1);
    if (kind.tag == FieldKind::Tag::P1) {
        for (std::size_t j = 0; j <= m; ++j) ws.field[j] = path[j * stride];
    } else {
        const double end = path[m_fine];
        for (std::size_t j = 0; j <= m; ++j) {
            ws.field[j] = path[j * stride] - (static_cast<double>(j) / dm) * end;
        }
    }
    ws.lags.resize(m);
    const double* a = ws.field.data();
    for (std::size_t k = 1; k <= m; ++k) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t j = k; j <= m; ++j) {
            mx = std::max(mx, a[j] - a[j - k]);
        }
        ws.lags[k - 1] = mx;
    }
}

// Finishes the supremum statistic from per-lag maxima. For the scaled kinds
// (P1-P3) the trend carries the factor u; callers compare against d*u.
double statistic_from_lags(const FieldKind& kind, const std::vector<double>& lags, double u) {
    const std::size_t m = lags.size();
    const double dm = static_cast<double>(m);
    double best = -std::numeric_limits<double>::infinity();
    switch (kind.tag) {
        case FieldKind::Tag::P1:
        case FieldKind::Tag::P2:
            for (std::size_t k = 1; k <= m; ++k) {
                best = std::max(best, lags[k - 1] - kind.c * (static_cast<double>(k) / dm) * u);
            }
            return best;
        case FieldKind::Tag::P3:
            for (std::size_t k = 1; k <= m; ++k) {
                const double frac = static_cast<double>(k) / dm;
                best = std::max(best, lags[k - 1] - kind.c * frac * (1.0 - frac) * u);
            }
            return best;
        case FieldKind::Tag::P4:
            // lag 0 and lag m are 0/0 forms and contribute nothing
            best = 0.0;
            for (std::size_t k = 1; k < m; ++k) {
                const double frac = static_cast<double>(k) / dm;
                best = std::max(best, lags[k - 1] / std::sqrt(frac * (1.0 - frac)));
            }
            return best;
        case FieldKind::Tag::Free2:
            for (std::size_t k = 1; k <= m; ++k) {
                best = std::max(best, lags[k - 1] - kind.c * (static_cast<double>(k) / dm));
            }
            return best;
        case FieldKind::Tag::Free3:
            for (std::size_t k = 1; k <= m; ++k) {
                const double frac = static_cast<double>(k) / dm;
                best = std::max(best, lags[k - 1] - kind.c * frac * (1.0 - frac));
            }
            return best;
    }
    throw ParamError("unknown field kind");
}

void check_sim_options(const SimOptions& opt) {
    if (opt.grid_m < 2) throw ParamError("grid_m must be at least 2");
    if (opt.n_rep < 1) throw ParamError("n_rep must be at least 1");
}

TailApprox analytic_for(const FieldKind& kind, double threshold) {
    switch (kind.tag) {
        case FieldKind::Tag::P1: return p1_fixed({kind.c, kind.d, threshold});
        case FieldKind::Tag::P2: return p2_fixed({kind.c, kind.d, threshold});
        case FieldKind::Tag::P3: return p3_fixed({kind.c, kind.d, threshold});
        case FieldKind::Tag::P4: return p4_tail(threshold);
        case FieldKind::Tag::Free2: return p2_free_delta(kind.c, threshold);
        case FieldKind::Tag::Free3: return p3_free_delta(kind.c, threshold);
    }
    throw ParamError("unknown field kind");
}

}  // namespace

void FieldKind::validate() const {
    switch (tag) {
        case Tag::P1:
            if (!(c > d && d > 0.0)) throw ParamError("P1 requires c > d > 0");
            break;
        case Tag::P2:
            if (!(c > 0.0 && d > 0.0)) throw ParamError("P2 requires c > 0 and d > 0");
            break;
        case Tag::P3:
            if (!(c > 4.0 * d && d > 0.0)) throw ParamError("P3 requires c > 4d > 0");
            break;
        case Tag::P4:
        case Tag::Free2:
        case Tag::Free3:
            break;
    }
}

std::string FieldKind::name() const {
    switch (tag) {
        case Tag::P1: return "p1";
        case Tag::P2: return "p2";
        case Tag::P3: return "p3";
        case Tag::P4: return "p4";
        case Tag::Free2: return "free2";
        case Tag::Free3: return "free3";
    }
    return "?";
}

std::pair<double, double> wilson_interval(std::int64_t k, std::int64_t n, double z) {
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double kuiper_half_tail(double u, int terms) {
    if (!(u > 0.5)) throw ParamError("kuiper_half_tail requires u > 0.5");
    if (terms < 1) throw ParamError("kuiper_half_tail requires at least one term");
    double sum = 0.0;
    for (int k = terms; k >= 1; --k) {
        const double ku2 = static_cast<double>(k) * static_cast<double>(k) * u * u;
        sum += 2.0 * (4.0 * ku2 - 1.0) * std::exp(-2.0 * ku2);
    }
    return 0.5 * sum;
}

TailEstimate simulate_sup(const FieldKind& kind, double u_or_d, const SimOptions& opt) {
    kind.validate();
    check_sim_options(opt);
    if (kind.scaled_trend() && !(u_or_d > 0.0)) throw ParamError("u must be positive");
    const std::size_t m = static_cast<std::size_t>(opt.grid_m);
    const double u = kind.scaled_trend() ? u_or_d : 0.0;
    const double level = kind.scaled_trend() ? kind.d * u_or_d : u_or_d;

    const auto n = static_cast<std::size_t>(opt.n_rep);
    std::vector<double> stat(n);
    parallel_replicates(opt.n_rep, opt.threads, [&](std::int64_t rep) {
        thread_local PathWorkspace ws;
        GaussianStream gauss(opt.seed, static_cast<std::uint64_t>(rep), 0);
        draw_brownian(gauss, m, ws.path);
        build_lag_maxima(kind, ws.path, m, 1, ws);
        stat[static_cast<std::size_t>(rep)] = statistic_from_lags(kind, ws.lags, u);
    });

    std::int64_t exceed = 0;
    for (double s : stat) exceed += (s > level) ? 1 : 0;

    TailEstimate est;
    est.p_hat = static_cast<double>(exceed) / static_cast<double>(opt.n_rep);
    std::tie(est.ci_low, est.ci_high) = wilson_interval(exceed, opt.n_rep);
    est.n_rep = opt.n_rep;
    est.grid_m = opt.grid_m;
    est.threshold = level;
    return est;
}

std::vector<StudyRow> convergence_study(const FieldKind& kind, const std::vector<double>& thresholds,
                                        const SimOptions& opt) {
    kind.validate();
    check_sim_options(opt);
    if (thresholds.empty()) throw ParamError("at least one threshold is required");
    for (std::size_t i = 1; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > thresholds[i - 1])) {
            throw ParamError("thresholds must be strictly increasing");
        }
    }
    if (kind.scaled_trend() && !(thresholds.front() > 0.0)) {
        throw ParamError("thresholds act as scales u and must be positive");
    }

    const std::size_t m_fine = 2 * static_cast<std::size_t>(opt.grid_m);
    const std::size_t nt = thresholds.size();
    const auto n = static_cast<std::size_t>(opt.n_rep);

    std::vector<std::uint8_t> exceed(nt * n);
    std::vector<std::uint8_t> exceed_fine(nt * n);
    parallel_replicates(opt.n_rep, opt.threads, [&](std::int64_t rep) {
        thread_local PathWorkspace wc, wf;
        GaussianStream gauss(opt.seed, static_cast<std::uint64_t>(rep), 0);
        draw_brownian(gauss, m_fine, wf.path);
        // both grid levels come from the same fine path
        build_lag_maxima(kind, wf.path, m_fine, 2, wc);
        build_lag_maxima(kind, wf.path, m_fine, 1, wf);
        for (std::size_t ti = 0; ti < nt; ++ti) {
            const double thr = thresholds[ti];
            const double u = kind.scaled_trend() ? thr : 0.0;
            const double level = kind.scaled_trend() ? kind.d * thr : thr;
            const auto r = static_cast<std::size_t>(rep);
            exceed[ti * n + r] = statistic_from_lags(kind, wc.lags, u) > level ? 1 : 0;
            exceed_fine[ti * n + r] = statistic_from_lags(kind, wf.lags, u) > level ? 1 : 0;
        }
    });

    std::vector<StudyRow> rows(nt);
    for (std::size_t ti = 0; ti < nt; ++ti) {
        std::int64_t k = 0, kf = 0;
        for (std::size_t r = 0; r < n; ++r) {
            k += exceed[ti * n + r];
            kf += exceed_fine[ti * n + r];
        }
        StudyRow& row = rows[ti];
        row.threshold = thresholds[ti];
        row.p_hat = static_cast<double>(k) / static_cast<double>(opt.n_rep);
        row.p_hat_fine = static_cast<double>(kf) / static_cast<double>(opt.n_rep);
        std::tie(row.ci_low, row.ci_high) = wilson_interval(k, opt.n_rep);
        row.analytic = analytic_for(kind, thresholds[ti]).value;
        row.ratio = row.analytic > 0.0 ? row.p_hat / row.analytic : 0.0;
    }
    return rows;
}

}  // namespace cpx
