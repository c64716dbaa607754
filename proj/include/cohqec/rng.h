#pragma once

#include <cstdint>
#include <random>

namespace cohqec {

/// Caller-owned random stream. All draws go through mt19937_64, whose output
/// sequence is fixed by the standard, so results are portable across libraries.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (true) {
            std::uint64_t x = engine_();
            if (x >= threshold) {
                return x % n;
            }
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }
    bool coin() { return (engine_() >> 63) != 0; }

    /// Seed for an independent stream identified by (master, point, realization).
    static std::uint64_t derive(std::uint64_t master, std::uint64_t point, std::uint64_t realization) {
        std::uint64_t h = splitmix(master ^ 0x6a09e667f3bcc909ULL);
        h = splitmix(h ^ point);
        return splitmix(h ^ realization);
    }

   private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace cohqec
