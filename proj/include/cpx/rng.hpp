#pragma once

#include <cmath>
#include <cstdint>

namespace cpx {

// Counter-style seeding: every replicate owns a generator derived statelessly
// from (master seed, replicate index, stream id), so results do not depend on
// execution order or worker count.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with state expanded from the derived 64-bit key.
class Xoshiro256 {
public:
    Xoshiro256(std::uint64_t master_seed, std::uint64_t replicate, std::uint64_t stream) {
        std::uint64_t key = master_seed;
        key ^= splitmix64(key) + 0x632BE59BD9B4E019ULL * (replicate + 1);
        key ^= splitmix64(key) + 0x9E3779B97F4A7C15ULL * (stream + 1);
        for (auto& s : state_) s = splitmix64(key);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0, 1), never exactly 0 or 1.
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

// Gaussian draws via the Box-Muller pair, cached so consumption is two
// uniforms per two normals. Fully deterministic given the stream.
class GaussianStream {
public:
    GaussianStream(std::uint64_t master_seed, std::uint64_t replicate, std::uint64_t stream)
        : rng_(master_seed, replicate, stream) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng_.uniform();
        const double u2 = rng_.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double uniform() { return rng_.uniform(); }

private:
    Xoshiro256 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace cpx
