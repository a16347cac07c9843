#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace svabc {

/// One step of the splitmix64 mixer. Bijective, strong avalanche; used both
/// to scramble user seeds and to derive independent substreams.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based substream derivation: folds each path component into the
/// base seed through splitmix64. Two calls agree iff base and the full path
/// agree, so substreams are reproducible regardless of scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = splitmix64(base);
    for (std::uint64_t x : path) {
        s = splitmix64(s ^ splitmix64(x));
    }
    return s;
}

/// Deterministic random stream: a mt19937_64 engine plus explicit
/// distribution transforms. The standard library's distribution objects are
/// implementation-defined, so uniform/normal/exponential are implemented here
/// to make every draw sequence a pure function of the seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the paired draw is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Exponential with rate 1.
    double exponential() { return -std::log(uniform()); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Gamma(shape, scale 1) via Marsaglia-Tsang squeeze; shape < 1 handled by
/// the boost-and-power identity.
double sample_gamma(double shape, Rng& rng);

}  // namespace svabc
