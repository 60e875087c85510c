#pragma once

#include <cmath>
#include <cstdint>

namespace fcp {

// splitmix64 step (Steele, Lea, Doug; public domain reference constants).
// Used both as a seed expander and for hashing (master seed, path index)
// pairs into stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna). One instance per Monte Carlo path; a
// single instance must not be shared across concurrent callers.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Stream for one path of an ensemble. The master seed and path index are
    // hashed together, so the stream assigned to a path does not depend on
    // how paths are scheduled onto workers.
    static RngStream for_path(std::uint64_t master_seed, std::uint64_t path_index) {
        std::uint64_t h = master_seed ^ ((path_index + 0x632be59bd9b4e019ULL) * 0x9e3779b97f4a7c15ULL);
        (void)splitmix64(h);
        return RngStream(splitmix64(h));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); safe inside log().
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double exponential() { return -std::log(uniform()); }

    // Standard normal via Box-Muller (sine partner discarded to keep the
    // stream layout independent of call history).
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace fcp
