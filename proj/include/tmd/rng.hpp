#ifndef TMD_RNG_HPP
#define TMD_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace tmd {

// SplitMix64, used only to expand seeds into generator state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// xoshiro256** (Blackman & Vigna). Seedable and splittable: substream(master, i)
// derives stream i deterministically, so Monte Carlo results are identical for
// any thread count and are portable across standard libraries (std::
// distributions have implementation-defined output sequences; these do not).
class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_) word = sm.next();
    }

    static Xoshiro256StarStar substream(std::uint64_t master_seed, std::uint64_t stream_index) {
        // distinct SplitMix64 start per stream; the 64-bit golden gamma keeps
        // consecutive stream seeds far apart
        return Xoshiro256StarStar(master_seed + (stream_index + 1) * 0x9E3779B97F4A7C15ULL);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform double in [0, 1), 53 usable bits
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound); bound must divide 2^64 for zero bias,
    // which holds for the powers of two used here
    std::uint32_t next_pow2(std::uint32_t bound) {
        return static_cast<std::uint32_t>(next() & (bound - 1));
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Poisson sample by inversion of exponential waiting times; chunked so the
    // running product never underflows for large means
    int next_poisson(double mean) {
        int count = 0;
        while (mean > 500.0) {
            count += poisson_knuth(500.0);
            mean -= 500.0;
        }
        return count + poisson_knuth(mean);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    int poisson_knuth(double mean) {
        if (mean <= 0.0) return 0;
        const double threshold = std::exp(-mean);
        int k = 0;
        double product = next_double();
        while (product > threshold) {
            ++k;
            product *= next_double();
        }
        return k;
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace tmd

#endif
