// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace risim {

// Every random quantity in the simulator is drawn from a substream keyed by
// (seed, purpose, index). Results are therefore reproducible bit-for-bit and
// independent of evaluation order, which is what makes the trial loop safe to
// parallelize.
namespace stream {
constexpr std::uint64_t channel = 0x11;
constexpr std::uint64_t pilot = 0x22;
constexpr std::uint64_t codebook = 0x33;
constexpr std::uint64_t covariance = 0x44;
constexpr std::uint64_t rps = 0x55;
constexpr std::uint64_t theory = 0x66;
constexpr std::uint64_t csi_perturb = 0x77;
constexpr std::uint64_t generic = 0x88;
}  // namespace stream

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t purpose,
                                    std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ purpose) ^ index);
}

class Rng {
  public:
    explicit Rng(std::uint64_t s) : eng_(s) {}

    static Rng substream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
        return Rng(substream_seed(seed, purpose, index));
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard real normal, Box-Muller (no spare caching: keeps the stream
    // position a pure function of the draw count).
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    // Circularly symmetric complex normal, unit variance: E|z|^2 = 1.
    std::complex<double> cgaussian() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::polar(std::sqrt(-std::log(u1)), two_pi * u2);
    }

    // Uniform integer in [0, bound).
    std::uint64_t integer(std::uint64_t bound) { return eng_() % bound; }

  private:
    static constexpr double two_pi = 6.283185307179586476925286766559;
    std::mt19937_64 eng_;
};

}  // namespace risim
