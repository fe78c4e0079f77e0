#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace qkdlab {

// Counter-based splittable generator (Philox2x64-10). A stream is fully
// identified by (seed, stream_id); draws within a stream are indexed by a
// 64-bit counter. Streams derived from distinct ids are statistically
// independent, so Monte-Carlo trials can be fanned out in any order (or in
// parallel) and still reproduce the single-threaded results bit for bit.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key_(seed), stream_(stream_id) {}

    // Derives a child stream id from a domain tag and an index. Used to give
    // every oscillator/trial its own stream.
    static std::uint64_t stream_of(std::uint64_t domain, std::uint64_t index) noexcept {
        return mix64(domain * 0x9E3779B97F4A7C15ull + index + 1);
    }

    std::uint64_t next_u64() noexcept {
        if (have_spare_word_) {
            have_spare_word_ = false;
            return spare_word_;
        }
        auto [a, b] = philox_block(counter_++);
        spare_word_ = b;
        have_spare_word_ = true;
        return a;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second member of the pair is cached.
    double next_gaussian() noexcept {
        if (have_spare_gauss_) {
            have_spare_gauss_ = false;
            return spare_gauss_;
        }
        // u1 in (0, 1] so the log is finite.
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_gauss_ = radius * std::sin(angle);
        have_spare_gauss_ = true;
        return radius * std::cos(angle);
    }

    double next_gaussian(double mean, double variance) noexcept {
        return mean + std::sqrt(variance) * next_gaussian();
    }

    // Unbiased uniform integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

    bool next_bool() noexcept { return (next_u64() & 1u) != 0; }

private:
    static std::uint64_t mix64(std::uint64_t z) noexcept {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::pair<std::uint64_t, std::uint64_t> philox_block(std::uint64_t ctr) const noexcept {
        std::uint64_t x0 = ctr;
        std::uint64_t x1 = stream_;
        std::uint64_t k = key_;
        for (int round = 0; round < 10; ++round) {
            const auto product =
                static_cast<unsigned __int128>(0xD2B74407B1CE6E93ull) * x0;
            const auto hi = static_cast<std::uint64_t>(product >> 64);
            const auto lo = static_cast<std::uint64_t>(product);
            x0 = hi ^ k ^ x1;
            x1 = lo;
            k += 0x9E3779B97F4A7C15ull;
        }
        return {x0, x1};
    }

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint64_t spare_word_ = 0;
    double spare_gauss_ = 0.0;
    bool have_spare_word_ = false;
    bool have_spare_gauss_ = false;
};

}  // namespace qkdlab
