#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace cpx {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(replicate_index) for every index in [0, n). Each worker owns a
// disjoint contiguous slice, so bodies may write to per-replicate slots
// without synchronization. Results must not depend on the partition.
template <typename Body>
void parallel_replicates(std::int64_t n, int threads, const Body& body) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n < 2 * threads) {
        for (std::int64_t r = 0; r < n; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::int64_t chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::int64_t r = lo; r < hi; ++r) body(r);
        });
    }
    for (auto& t : pool) t.join();
}

// Neumaier-compensated sum in fixed (index) order: the reduction is exact to
// the same bits no matter how many workers produced the inputs.
inline double compensated_sum(const std::vector<double>& values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

struct MeanStd {
    double mean = 0.0;
    double std_error = 0.0;
};

inline MeanStd mean_and_stderr(const std::vector<double>& values) {
    MeanStd out;
    const auto n = static_cast<double>(values.size());
    if (values.empty()) return out;
    out.mean = compensated_sum(values) / n;
    if (values.size() < 2) return out;
    double ss = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double d = (v - out.mean) * (v - out.mean);
        const double t = ss + d;
        comp += (std::abs(ss) >= d) ? ((ss - t) + d) : ((d - t) + ss);
        ss = t;
    }
    const double var = (ss + comp) / (n - 1.0);
    out.std_error = std::sqrt(var / n);
    return out;
}

}  // namespace cpx
