#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cpx/errors.hpp"
#include "cpx/rng.hpp"

namespace cpx {

// Grid for fractional Brownian motion with Var B(t) = |t|^alpha (Hurst
// parameter alpha/2): points {0, eta, ..., n_points-1 eta} covering [0, horizon].
struct FbmGridSpec {
    double alpha = 1.0;
    double horizon = 1.0;   // lambda
    double step = 0.01;     // eta

    std::size_t n_points() const;
    void validate() const;
};

enum class FbmMethod { Auto, CirculantOnly, DenseOnly };

// Samples exact-in-distribution fBm paths on a fixed grid. Spectral synthesis
// of the stationary increments through a circulant embedding; a dense
// triangular factorization of the increment covariance is the fallback when
// the embedding fails. alpha = 2 collapses to the rank-one path t*Z and is
// produced directly.
class FbmSampler {
public:
    explicit FbmSampler(FbmGridSpec spec, FbmMethod method = FbmMethod::Auto);
    ~FbmSampler();

    FbmSampler(const FbmSampler&) = delete;
    FbmSampler& operator=(const FbmSampler&) = delete;

    const FbmGridSpec& spec() const { return spec_; }

    // One path B(0)=0, B(k*eta), written into `path` (resized to n_points).
    // Thread-safe across distinct GaussianStream objects.
    void sample(GaussianStream& gauss, std::vector<double>& path) const;

    bool used_dense_fallback() const;

private:
    struct Impl;
    FbmGridSpec spec_;
    std::unique_ptr<Impl> impl_;
};

// Convenience wrapper: one path from (seed, replicate, stream).
std::vector<double> sample_fbm(const FbmGridSpec& spec, std::uint64_t seed,
                               std::uint64_t replicate = 0, std::uint64_t stream = 0);

}  // namespace cpx
