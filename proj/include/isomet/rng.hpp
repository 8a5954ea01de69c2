#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace isomet {

/// splitmix64 step; the standard 64-bit finalizer-based generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministically folds a master seed and a path of stream indices into a
/// single 64-bit substream seed. Streams with distinct paths are independent
/// for all practical purposes, which makes results reproducible under any
/// parallel schedule: task (a, b, c) always sees stream (seed, a, b, c).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = master ^ 0x6a09e667f3bcc909ULL;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t id : path) {
        s ^= splitmix64(out) + id;
        out = splitmix64(s);
    }
    return out;
}

/// One independent random stream. All sampling routines are implemented on
/// top of raw 64-bit draws so the sequences are fully pinned by this code,
/// not by the standard library's distribution implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    RngStream(std::uint64_t master, std::initializer_list<std::uint64_t> path)
        : gen_(derive_seed(master, path)) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        // rejection to remove modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    bool coin() { return (gen_() & 1ULL) != 0; }

    /// Standard normal via Box-Muller (cosine branch; fixed two draws).
    double normal() {
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi_ * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Gamma(alpha, 1) by Marsaglia-Tsang squeeze; alpha < 1 boosted.
    double gamma(double alpha) {
        double boost = 1.0;
        if (alpha < 1.0) {
            boost = std::pow(uniform_pos(), 1.0 / alpha);
            alpha += 1.0;
        }
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v;
        }
    }

    double beta(double a, double b) {
        double x = gamma(a);
        double y = gamma(b);
        return x / (x + y);
    }

private:
    static constexpr double two_pi_ = 6.283185307179586476925286766559;
    std::mt19937_64 gen_;
};

}  // namespace isomet
