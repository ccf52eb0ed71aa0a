#include <catch_amalgamated.hpp>

#include <cmath>

#include "cpx/fbm.hpp"
#include "cpx/parallel.hpp"

using namespace cpx;
using Catch::Approx;

namespace {

// Sample variance of path values at a fixed grid index over replicates.
double sample_variance_at(const FbmSampler& sampler, std::size_t index, int n_rep,
                          std::uint64_t seed) {
    std::vector<double> vals(n_rep);
    std::vector<double> path;
    for (int r = 0; r < n_rep; ++r) {
        GaussianStream g(seed, r, 0);
        sampler.sample(g, path);
        vals[r] = path[index];
    }
    const auto ms = mean_and_stderr(vals);
    double ss = 0.0;
    for (double v : vals) ss += (v - ms.mean) * (v - ms.mean);
    return ss / (vals.size() - 1.0);
}

}  // namespace

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS((FbmGridSpec{0.0, 1.0, 0.01}.validate()), ParamError);
    CHECK_THROWS_AS((FbmGridSpec{2.5, 1.0, 0.01}.validate()), ParamError);
    CHECK_THROWS_AS((FbmGridSpec{1.0, 0.005, 0.01}.validate()), ParamError);
    CHECK(FbmGridSpec{1.0, 1.0, 0.01}.n_points() == 101);
}

TEST_CASE("alpha = 1 gives independent increments with variance eta") {
    FbmSampler sampler(FbmGridSpec{1.0, 2.0, 0.1});
    const int n_rep = 20000;
    std::vector<double> inc1(n_rep), inc7(n_rep), prod(n_rep);
    std::vector<double> path;
    for (int r = 0; r < n_rep; ++r) {
        GaussianStream g(42, r, 0);
        sampler.sample(g, path);
        inc1[r] = path[1] - path[0];
        inc7[r] = path[7] - path[6];
        prod[r] = inc1[r] * inc7[r];
    }
    auto var_of = [](const std::vector<double>& v) {
        const auto ms = mean_and_stderr(v);
        double ss = 0.0;
        for (double x : v) ss += (x - ms.mean) * (x - ms.mean);
        return ss / (v.size() - 1.0);
    };
    CHECK(var_of(inc1) == Approx(0.1).margin(0.005));
    CHECK(var_of(inc7) == Approx(0.1).margin(0.005));
    // independence: correlation within 4 standard errors of 0
    const auto pm = mean_and_stderr(prod);
    CHECK(std::abs(pm.mean) < 4.0 * pm.std_error + 1e-12);
}

TEST_CASE("alpha = 2 path is t times one standard normal") {
    FbmSampler sampler(FbmGridSpec{2.0, 1.0, 0.05});
    GaussianStream g(7, 0, 0);
    std::vector<double> path;
    sampler.sample(g, path);
    const double z = path[1] / 0.05;
    for (std::size_t k = 0; k <= 20; ++k) {
        CHECK(path[k] == Approx(0.05 * static_cast<double>(k) * z).margin(1e-12));
    }
}

TEST_CASE("marginal variance matches |t|^alpha within 4 standard errors") {
    const int n_rep = 20000;
    for (double alpha : {0.6, 1.0, 1.5}) {
        FbmGridSpec spec{alpha, 1.0, 0.05};
        FbmSampler sampler(spec);
        const std::size_t idx = spec.n_points() - 1;  // t = 1
        const double var = sample_variance_at(sampler, idx, n_rep, 11);
        // variance of the sample variance of a Gaussian: 2 sigma^4/(n-1)
        const double se = std::sqrt(2.0 / (n_rep - 1.0));  // relative
        INFO("alpha=" << alpha << " var=" << var);
        CHECK(var == Approx(1.0).margin(4.0 * se + 0.002));
    }
}

TEST_CASE("covariance structure at interior points") {
    // Cov(B(s), B(t)) = (|s|^a + |t|^a - |s-t|^a)/2
    const double alpha = 1.4;
    FbmSampler sampler(FbmGridSpec{alpha, 1.0, 0.25});
    const int n_rep = 40000;
    std::vector<double> prods(n_rep);
    std::vector<double> path;
    for (int r = 0; r < n_rep; ++r) {
        GaussianStream g(3, r, 0);
        sampler.sample(g, path);
        prods[r] = path[1] * path[3];  // s=0.25, t=0.75
    }
    const double expect = 0.5 * (std::pow(0.25, alpha) + std::pow(0.75, alpha) -
                                 std::pow(0.5, alpha));
    const auto ms = mean_and_stderr(prods);
    CHECK(ms.mean == Approx(expect).margin(5.0 * ms.std_error));
}

TEST_CASE("dense fallback agrees with circulant synthesis in law") {
    FbmGridSpec spec{0.8, 1.0, 0.1};
    FbmSampler circ(spec, FbmMethod::CirculantOnly);
    FbmSampler dense(spec, FbmMethod::DenseOnly);
    CHECK_FALSE(circ.used_dense_fallback());
    CHECK(dense.used_dense_fallback());
    const double v_circ = sample_variance_at(circ, spec.n_points() - 1, 8000, 21);
    const double v_dense = sample_variance_at(dense, spec.n_points() - 1, 8000, 22);
    CHECK(v_circ == Approx(1.0).margin(0.07));
    CHECK(v_dense == Approx(1.0).margin(0.07));
}

TEST_CASE("sampling is deterministic in (seed, replicate, stream)") {
    FbmGridSpec spec{1.3, 1.0, 0.05};
    const auto a = sample_fbm(spec, 99, 5, 0);
    const auto b = sample_fbm(spec, 99, 5, 0);
    const auto c = sample_fbm(spec, 99, 6, 0);
    const auto d = sample_fbm(spec, 99, 5, 1);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a != d);
}

TEST_CASE("gaussian stream basic sanity") {
    GaussianStream g(1, 2, 3);
    const int n = 50000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = g.next();
    const auto ms = mean_and_stderr(xs);
    CHECK(std::abs(ms.mean) < 4.0 * ms.std_error + 1e-9);
    double ss = 0.0;
    for (double x : xs) ss += x * x;
    CHECK(ss / n == Approx(1.0).margin(0.03));
}
