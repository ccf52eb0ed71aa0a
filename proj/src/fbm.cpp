#include "cpx/fbm.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace cpx {

namespace {

std::mutex fftw_plan_mutex;  // FFTW plan creation is not thread-safe

constexpr std::size_t kDenseLimit = 4096;

// Autocovariance of the increment process (fractional Gaussian noise) on a
// grid with spacing eta: gamma(k) = eta^alpha (|k+1|^a - 2|k|^a + |k-1|^a)/2.
double fgn_autocov(double alpha, double eta, std::size_t k) {
    const double dk = static_cast<double>(k);
    const double scale = std::pow(eta, alpha);
    if (k == 0) return scale;
    return 0.5 * scale *
           (std::pow(dk + 1.0, alpha) - 2.0 * std::pow(dk, alpha) + std::pow(dk - 1.0, alpha));
}

}  // namespace

std::size_t FbmGridSpec::n_points() const {
    return static_cast<std::size_t>(std::floor(horizon / step + 1e-9)) + 1;
}

void FbmGridSpec::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ParamError("fbm grid requires alpha in (0, 2]");
    if (!(step > 0.0)) throw ParamError("fbm grid requires step > 0");
    if (!(horizon >= step)) throw ParamError("fbm grid requires horizon >= step");
    if (n_points() < 2) throw ParamError("fbm grid needs at least 2 points");
}

struct FbmSampler::Impl {
    std::size_t n_inc = 0;        // increments per path
    bool degenerate = false;      // alpha == 2
    bool dense = false;

    // circulant synthesis
    std::size_t embed_size = 0;
    std::vector<double> spectral_scale;  // sqrt(lambda_k / (2M)), with edge cases
    fftw_plan plan = nullptr;
    fftw_complex* planned_buf = nullptr;

    // dense fallback: lower-triangular factor of the increment covariance
    std::vector<double> chol;  // row-major n_inc x n_inc

    ~Impl() {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        if (plan != nullptr) fftw_destroy_plan(plan);
        if (planned_buf != nullptr) fftw_free(planned_buf);
    }

    bool try_circulant(double alpha, double eta) {
        std::size_t m = 1;
        while (m < 2 * n_inc) m <<= 1;
        for (int attempt = 0; attempt < 3; ++attempt, m <<= 1) {
            std::vector<double> row(m);
            for (std::size_t j = 0; j <= m / 2; ++j) row[j] = fgn_autocov(alpha, eta, j);
            for (std::size_t j = m / 2 + 1; j < m; ++j) row[j] = row[m - j];

            // eigenvalues of the circulant = DFT of the first row
            std::vector<double> eig(m);
            {
                std::lock_guard<std::mutex> lock(fftw_plan_mutex);
                fftw_complex* buf = fftw_alloc_complex(m);
                fftw_plan p = fftw_plan_dft_1d(static_cast<int>(m), buf, buf, FFTW_FORWARD,
                                               FFTW_ESTIMATE);
                for (std::size_t j = 0; j < m; ++j) {
                    buf[j][0] = row[j];
                    buf[j][1] = 0.0;
                }
                fftw_execute(p);
                for (std::size_t j = 0; j < m; ++j) eig[j] = buf[j][0];
                fftw_destroy_plan(p);
                fftw_free(buf);
            }

            double min_eig = eig[0];
            for (double e : eig) min_eig = std::min(min_eig, e);
            if (min_eig < -1e-9 * std::abs(eig[0])) continue;  // embedding not nonneg definite

            embed_size = m;
            spectral_scale.resize(m);
            const double dm = static_cast<double>(m);
            for (std::size_t j = 0; j < m; ++j) {
                const double lam = std::max(eig[j], 0.0);
                const bool edge = (j == 0 || j == m / 2);
                spectral_scale[j] = std::sqrt(lam / (edge ? dm : 2.0 * dm));
            }
            {
                std::lock_guard<std::mutex> lock(fftw_plan_mutex);
                planned_buf = fftw_alloc_complex(m);
                plan = fftw_plan_dft_1d(static_cast<int>(m), planned_buf, planned_buf,
                                        FFTW_BACKWARD, FFTW_ESTIMATE);
            }
            return true;
        }
        return false;
    }

    void build_dense(double alpha, double eta) {
        if (n_inc > kDenseLimit) {
            throw ResourceError("circulant embedding failed and the grid (" +
                                std::to_string(n_inc) +
                                " increments) exceeds the dense-factorization limit");
        }
        const std::size_t n = n_inc;
        chol.assign(n * n, 0.0);
        std::vector<double> cov(n);
        for (std::size_t k = 0; k < n; ++k) cov[k] = fgn_autocov(alpha, eta, k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double s = cov[i - j];
                for (std::size_t k = 0; k < j; ++k) s -= chol[i * n + k] * chol[j * n + k];
                if (i == j) {
                    if (s <= 0.0) throw ResourceError("increment covariance is not positive definite");
                    chol[i * n + i] = std::sqrt(s);
                } else {
                    chol[i * n + j] = s / chol[j * n + j];
                }
            }
        }
        dense = true;
    }
};

FbmSampler::FbmSampler(FbmGridSpec spec, FbmMethod method)
    : spec_(spec), impl_(std::make_unique<Impl>()) {
    spec_.validate();
    impl_->n_inc = spec_.n_points() - 1;
    if (spec_.alpha == 2.0) {
        impl_->degenerate = true;  // rank-one covariance, path = t Z
        return;
    }
    if (method != FbmMethod::DenseOnly && impl_->try_circulant(spec_.alpha, spec_.step)) {
        return;
    }
    if (method == FbmMethod::CirculantOnly) {
        throw ResourceError("circulant embedding is not nonnegative definite for this grid");
    }
    impl_->build_dense(spec_.alpha, spec_.step);
}

FbmSampler::~FbmSampler() = default;

bool FbmSampler::used_dense_fallback() const { return impl_->dense; }

void FbmSampler::sample(GaussianStream& gauss, std::vector<double>& path) const {
    const std::size_t n = impl_->n_inc;
    path.resize(n + 1);
    path[0] = 0.0;

    if (impl_->degenerate) {
        const double z = gauss.next();
        for (std::size_t k = 1; k <= n; ++k) {
            path[k] = static_cast<double>(k) * spec_.step * z;
        }
        return;
    }

    if (impl_->dense) {
        std::vector<double> z(n);
        for (auto& v : z) v = gauss.next();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            const double* row = impl_->chol.data() + i * n;
            for (std::size_t k = 0; k <= i; ++k) s += row[k] * z[k];
            path[i + 1] = path[i] + s;
        }
        return;
    }

    const std::size_t m = impl_->embed_size;
    fftw_complex* buf = fftw_alloc_complex(m);
    buf[0][0] = impl_->spectral_scale[0] * gauss.next();
    buf[0][1] = 0.0;
    buf[m / 2][0] = impl_->spectral_scale[m / 2] * gauss.next();
    buf[m / 2][1] = 0.0;
    for (std::size_t k = 1; k < m / 2; ++k) {
        const double re = impl_->spectral_scale[k] * gauss.next();
        const double im = impl_->spectral_scale[k] * gauss.next();
        buf[k][0] = re;
        buf[k][1] = im;
        buf[m - k][0] = re;
        buf[m - k][1] = -im;
    }
    fftw_execute_dft(impl_->plan, buf, buf);
    for (std::size_t k = 0; k < n; ++k) {
        path[k + 1] = path[k] + buf[k][0];
    }
    fftw_free(buf);
}

std::vector<double> sample_fbm(const FbmGridSpec& spec, std::uint64_t seed,
                               std::uint64_t replicate, std::uint64_t stream) {
    FbmSampler sampler(spec);
    GaussianStream gauss(seed, replicate, stream);
    std::vector<double> path;
    sampler.sample(gauss, path);
    return path;
}

}  // namespace cpx
