#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace oplab {

/// Domain separators for derived random streams. Keying every draw family
/// with its own tag keeps streams independent no matter how many draws each
/// family consumes.
enum class RngDomain : std::uint64_t {
    init = 1,      // initial agent positions
    noise = 2,     // per-step Euler noise
    ensemble = 3,  // per-realization seed derivation
    reduced = 4,   // reduced cluster-center increments
};

/// Counter-based SplitMix64 stream.
///
/// A stream is keyed by an arbitrary list of 64-bit words (seed, domain,
/// step, agent, ...). The key is folded through the SplitMix64 finalizer, so
/// draws for (seed, step, agent) are a pure function of the key: identical
/// across thread counts, snapshot strides, and evaluation order.
class Rng {
public:
    static constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ull;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    static constexpr std::uint64_t key(std::initializer_list<std::uint64_t> words) {
        std::uint64_t h = 0x853c49e6748fea9bull;
        for (std::uint64_t w : words) {
            h = mix(h + golden_gamma + w);
        }
        return h;
    }

    explicit constexpr Rng(std::uint64_t state) : state_(state) {}
    constexpr Rng(std::initializer_list<std::uint64_t> words) : state_(key(words)) {}

    constexpr std::uint64_t next_u64() {
        state_ += golden_gamma;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Standard normal via Box-Muller. One value per call; u1 is drawn from
    /// (0, 1] so the log never sees zero.
    double gaussian() {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

/// One standard-normal draw addressed by (seed, domain, step, agent).
inline double keyed_gaussian(std::uint64_t seed, RngDomain domain,
                             std::uint64_t step, std::uint64_t agent) {
    Rng rng({seed, static_cast<std::uint64_t>(domain), step, agent});
    return rng.gaussian();
}

/// One uniform [0,1) draw addressed the same way.
inline double keyed_uniform(std::uint64_t seed, RngDomain domain,
                            std::uint64_t step, std::uint64_t agent) {
    Rng rng({seed, static_cast<std::uint64_t>(domain), step, agent});
    return rng.uniform();
}

} // namespace oplab
