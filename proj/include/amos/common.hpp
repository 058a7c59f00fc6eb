#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>

namespace amos {

/// Malformed or inconsistent input data (files, specs, label vectors).
/// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical solver failed to converge within its iteration budget.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a master seed with salts into an independent stream seed.
/// Substreams derived with distinct salts are used for per-cluster,
/// per-pair and per-restart sampling so that results do not depend on
/// evaluation order.
inline std::uint64_t mix(std::uint64_t seed, std::initializer_list<std::uint64_t> salts) {
    std::uint64_t h = splitmix64(seed ^ 0x8f1bbcdcbfa53e0bULL);
    for (std::uint64_t s : salts) h = splitmix64(h ^ s);
    return h;
}

/// Deterministic random stream. mt19937_64 has a standardized output
/// sequence and all distributions below are hand-rolled on top of raw
/// 64-bit draws, so identical seeds give identical samples on every
/// platform (std::*_distribution would not guarantee that).
class Stream {
public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive, by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
        std::uint64_t draw;
        do {
            draw = eng_();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Exponential with the given mean, strictly positive.
    double exponential(double mean) {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return -mean * std::log(u);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace rng
} // namespace amos
