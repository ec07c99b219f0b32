// Deterministic per-trial random streams: every trial derives its own engine
// from (seed, counter), so sharding across workers never changes results.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pcm {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
}

inline std::mt19937_64 trial_rng(uint64_t seed, uint64_t counter) {
    return std::mt19937_64(mix_seed(seed, counter));
}

/// Marsaglia polar method. The method is fixed (not the library's
/// normal_distribution) so streams are stable across toolchains; the name
/// "marsaglia-polar" is what output metadata reports.
class GaussianSampler {
  public:
    template <class Rng>
    double operator()(Rng& rng) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform(rng) - 1.0;
            v = 2.0 * uniform(rng) - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double r = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * r;
        have_spare_ = true;
        return u * r;
    }

  private:
    template <class Rng>
    static double uniform(Rng& rng) {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline constexpr const char* kGaussianMethodName = "marsaglia-polar";

}  // namespace pcm
